#include "spinlie/matrix.hpp"

#include <stdexcept>

namespace spinlie {

FieldMatrix::FieldMatrix(Field f, std::size_t rows, std::size_t cols)
    : f_(std::move(f)), rows_(rows), cols_(cols),
      packed_(f_.p() == 2 && f_.e() == 1) {
    if (packed_) {
        wpr_ = (cols_ + 63) / 64;
        bits_.assign(rows_ * wpr_, 0);
    } else {
        ent_.assign(rows_ * cols_, 0);
    }
}

void FieldMatrix::row_axpy(std::size_t dst, std::size_t src, fe s) {
    if (s == 0) return;
    if (packed_) {
        std::uint64_t* d = &bits_[dst * wpr_];
        const std::uint64_t* a = &bits_[src * wpr_];
        for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= a[w];
    } else {
        fe* d = &ent_[dst * cols_];
        const fe* a = &ent_[src * cols_];
        for (std::size_t c = 0; c < cols_; ++c) d[c] = f_.add(d[c], f_.mul(s, a[c]));
    }
}

void FieldMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    if (packed_) {
        for (std::size_t w = 0; w < wpr_; ++w)
            std::swap(bits_[a * wpr_ + w], bits_[b * wpr_ + w]);
    } else {
        for (std::size_t c = 0; c < cols_; ++c)
            std::swap(ent_[a * cols_ + c], ent_[b * cols_ + c]);
    }
}

void FieldMatrix::scale_row(std::size_t r, fe s) {
    if (packed_) return;  // only scalars 0/1 exist
    for (std::size_t c = 0; c < cols_; ++c)
        ent_[r * cols_ + c] = f_.mul(ent_[r * cols_ + c], s);
}

FieldMatrix FieldMatrix::transpose() const {
    FieldMatrix t(f_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) {
            fe v = get(r, c);
            if (v) t.set(c, r, v);
        }
    return t;
}

FieldMatrix FieldMatrix::mul(const FieldMatrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("FieldMatrix::mul: shape mismatch");
    FieldMatrix out(f_, rows_, other.cols_);
    if (packed_ && other.packed_) {
        // row-combination: out.row(r) = xor of other's rows where this(r,k) = 1
        for (std::size_t r = 0; r < rows_; ++r) {
            std::uint64_t* dst = &out.bits_[r * out.wpr_];
            const std::uint64_t* a = &bits_[r * wpr_];
            for (std::size_t k = 0; k < cols_; ++k)
                if ((a[k / 64] >> (k % 64)) & 1u) {
                    const std::uint64_t* b = &other.bits_[k * other.wpr_];
                    for (std::size_t w = 0; w < out.wpr_; ++w) dst[w] ^= b[w];
                }
        }
    } else {
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t k = 0; k < cols_; ++k) {
                fe a = get(r, k);
                if (!a) continue;
                for (std::size_t c = 0; c < other.cols_; ++c) {
                    fe b = other.get(k, c);
                    if (b) out.set(r, c, f_.add(out.get(r, c), f_.mul(a, b)));
                }
            }
    }
    return out;
}

std::vector<fe> FieldMatrix::apply(const std::vector<fe>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("FieldMatrix::apply: length mismatch");
    std::vector<fe> out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        if (packed_) {
            const std::uint64_t* a = &bits_[r * wpr_];
            std::uint64_t acc = 0;
            for (std::size_t c = 0; c < cols_; ++c)
                if (v[c]) acc ^= (a[c / 64] >> (c % 64)) & 1u;
            out[r] = fe(acc & 1u);
        } else {
            fe acc = 0;
            const fe* a = &ent_[r * cols_];
            for (std::size_t c = 0; c < cols_; ++c)
                if (a[c] && v[c]) acc = f_.add(acc, f_.mul(a[c], v[c]));
            out[r] = acc;
        }
    }
    return out;
}

bool FieldMatrix::is_zero() const {
    if (packed_) {
        for (auto w : bits_) if (w) return false;
        return true;
    }
    for (auto v : ent_) if (v) return false;
    return true;
}

bool FieldMatrix::operator==(const FieldMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || !(f_.spec() == o.f_.spec())) return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c) != o.get(r, c)) return false;
    return true;
}

namespace {

// In-place row echelon; returns pivot columns.  First nonzero row wins.
std::vector<std::size_t> echelonize(FieldMatrix& m) {
    const Field& f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pr = row;
        while (pr < m.rows() && m.get(pr, col) == 0) ++pr;
        if (pr == m.rows()) continue;
        m.swap_rows(row, pr);
        fe piv = m.get(row, col);
        if (piv != 1) m.scale_row(row, f.inv(piv));
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (r != row && m.get(r, col) != 0)
                m.row_axpy(r, row, f.neg(m.get(r, col)));
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t rank(const FieldMatrix& m) {
    FieldMatrix w = m;
    return echelonize(w).size();
}

FieldMatrix kernel_basis(const FieldMatrix& m) {
    FieldMatrix w = m;
    auto pivots = echelonize(w);
    const Field& f = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    FieldMatrix ker(f, m.cols() - pivots.size(), m.cols());
    std::size_t kr = 0;
    for (std::size_t free_c = 0; free_c < m.cols(); ++free_c) {
        if (is_pivot[free_c]) continue;
        ker.set(kr, free_c, 1);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            ker.set(kr, pivots[i], f.neg(w.get(i, free_c)));
        ++kr;
    }
    return ker;
}

std::optional<std::vector<fe>> solve(const FieldMatrix& m, const std::vector<fe>& rhs) {
    if (rhs.size() != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
    const Field& f = m.field();
    FieldMatrix aug(f, m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug.set(r, c, m.get(r, c));
        aug.set(r, m.cols(), rhs[r]);
    }
    auto pivots = echelonize(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    std::vector<fe> x(m.cols(), 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.get(i, m.cols());
    return x;
}

FieldMatrix identity_matrix(const Field& f, std::size_t n) {
    FieldMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FieldMatrix inverse(const FieldMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: square matrices only");
    const Field& f = m.field();
    std::size_t n = m.rows();
    FieldMatrix aug(f, n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug.set(r, c, m.get(r, c));
        aug.set(r, n + r, 1);
    }
    auto pivots = echelonize(aug);
    if (pivots.size() != n || pivots.back() != n - 1)
        throw std::domain_error("inverse: singular matrix");
    FieldMatrix inv(f, n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv.set(r, c, aug.get(r, n + c));
    return inv;
}

fe determinant(const FieldMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: square matrices only");
    const Field& f = m.field();
    FieldMatrix w = m;
    std::size_t n = m.rows();
    fe d = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pr = col;
        while (pr < n && w.get(pr, col) == 0) ++pr;
        if (pr == n) return 0;
        if (pr != col) {
            w.swap_rows(col, pr);
            d = f.neg(d);
        }
        fe piv = w.get(col, col);
        d = f.mul(d, piv);
        fe inv = f.inv(piv);
        for (std::size_t r = col + 1; r < n; ++r) {
            fe v = w.get(r, col);
            if (v) w.row_axpy(r, col, f.neg(f.mul(v, inv)));
        }
    }
    return d;
}

}  // namespace spinlie
