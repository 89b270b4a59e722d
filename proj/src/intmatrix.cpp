#include "spinlie/intmatrix.hpp"

#include <stdexcept>

namespace spinlie {

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("IntMatrix::mul: shape mismatch");
    IntMatrix out(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const bigint& a = get(r, k);
            if (a == 0) continue;
            for (std::size_t c = 0; c < o.cols_; ++c)
                out.at(r, c) += a * o.get(k, c);
        }
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, get(r, c));
    return t;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

namespace {

void row_op(IntMatrix& a, IntMatrix& u, std::size_t dst, std::size_t src, const bigint& q) {
    for (std::size_t c = 0; c < a.cols(); ++c) a.at(dst, c) -= q * a.get(src, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u.at(dst, c) -= q * u.get(src, c);
}

void col_op(IntMatrix& a, IntMatrix& v, std::size_t dst, std::size_t src, const bigint& q) {
    for (std::size_t r = 0; r < a.rows(); ++r) a.at(r, dst) -= q * a.get(r, src);
    for (std::size_t r = 0; r < v.rows(); ++r) v.at(r, dst) -= q * v.get(r, src);
}

void swap_rows(IntMatrix& a, IntMatrix& u, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a.at(i, c), a.at(j, c));
    for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u.at(i, c), u.at(j, c));
}

void swap_cols(IntMatrix& a, IntMatrix& v, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a.at(r, i), a.at(r, j));
    for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v.at(r, i), v.at(r, j));
}

void negate_row(IntMatrix& a, IntMatrix& u, std::size_t i) {
    for (std::size_t c = 0; c < a.cols(); ++c) a.at(i, c) = -a.get(i, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u.at(i, c) = -u.get(i, c);
}

bigint iabs(const bigint& x) { return x < 0 ? bigint(-x) : x; }

}  // namespace

SnfResult smith_normal_form(const IntMatrix& a0) {
    IntMatrix a = a0;
    IntMatrix u = IntMatrix::identity(a.rows());
    IntMatrix v = IntMatrix::identity(a.cols());
    std::size_t n = std::min(a.rows(), a.cols());
    std::size_t t = 0;
    for (; t < n; ++t) {
        // find a nonzero pivot at (>=t, >=t)
        std::size_t pr = t, pc = t;
        bool found = false;
        bigint best = 0;
        for (std::size_t r = t; r < a.rows(); ++r)
            for (std::size_t c = t; c < a.cols(); ++c)
                if (a.get(r, c) != 0) {
                    bigint m = iabs(a.get(r, c));
                    if (!found || m < best) { best = m; pr = r; pc = c; found = true; }
                }
        if (!found) break;
        swap_rows(a, u, t, pr);
        swap_cols(a, v, t, pc);
        // clear row and column t, re-picking a smaller pivot as remainders appear
        for (;;) {
            bool clean = true;
            for (std::size_t r = t + 1; r < a.rows(); ++r)
                if (a.get(r, t) != 0) {
                    bigint q = a.get(r, t) / a.get(t, t);
                    row_op(a, u, r, t, q);
                    if (a.get(r, t) != 0) { swap_rows(a, u, t, r); clean = false; }
                }
            for (std::size_t c = t + 1; c < a.cols(); ++c)
                if (a.get(t, c) != 0) {
                    bigint q = a.get(t, c) / a.get(t, t);
                    col_op(a, v, c, t, q);
                    if (a.get(t, c) != 0) { swap_cols(a, v, t, c); clean = false; }
                }
            if (clean) break;
        }
        if (a.get(t, t) < 0) negate_row(a, u, t);
    }
    // enforce the divisibility chain d_i | d_{i+1}
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i + 1 < t; ++i) {
            bigint di = a.get(i, i), dj = a.get(i + 1, i + 1);
            if (dj % di == 0) continue;
            changed = true;
            // fold entry (i+1,i+1) into row i and redo the two-pivot block
            for (std::size_t c = 0; c < a.cols(); ++c) a.at(i, c) += a.get(i + 1, c);
            for (std::size_t c = 0; c < u.cols(); ++c) u.at(i, c) += u.get(i + 1, c);
            for (;;) {
                bool clean = true;
                if (a.get(i + 1, i) != 0) {
                    bigint q = a.get(i + 1, i) / a.get(i, i);
                    row_op(a, u, i + 1, i, q);
                    if (a.get(i + 1, i) != 0) { swap_rows(a, u, i, i + 1); clean = false; }
                }
                if (a.get(i, i + 1) != 0) {
                    bigint q = a.get(i, i + 1) / a.get(i, i);
                    col_op(a, v, i + 1, i, q);
                    if (a.get(i, i + 1) != 0) { swap_cols(a, v, i, i + 1); clean = false; }
                }
                if (!clean) continue;
                break;
            }
            if (a.get(i, i) < 0) negate_row(a, u, i);
            if (a.get(i + 1, i + 1) < 0) negate_row(a, u, i + 1);
        }
    }
    SnfResult res;
    for (std::size_t i = 0; i < t; ++i) res.divisors.push_back(a.get(i, i));
    res.u = std::move(u);
    res.v = std::move(v);
    return res;
}

bigint det(const IntMatrix& a0) {
    if (a0.rows() != a0.cols()) throw std::invalid_argument("det: square matrices only");
    std::size_t n = a0.rows();
    if (n == 0) return 1;
    IntMatrix a = a0;
    bigint sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.get(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && a.get(r, k) == 0) ++r;
            if (r == n) return 0;
            for (std::size_t c = 0; c < n; ++c) std::swap(a.at(k, c), a.at(r, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / prev;
        prev = a.get(k, k);
    }
    return sign * a.get(n - 1, n - 1);
}

IntMatrix adjugate(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("adjugate: square matrices only");
    std::size_t n = a.rows();
    IntMatrix adj(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            IntMatrix minor(n - 1, n - 1);
            for (std::size_t i = 0, mi = 0; i < n; ++i) {
                if (i == c) continue;  // adjugate: cofactor of (c, r)
                for (std::size_t j = 0, mj = 0; j < n; ++j) {
                    if (j == r) continue;
                    minor.set(mi, mj++, a.get(i, j));
                }
                ++mi;
            }
            bigint d = det(minor);
            adj.set(r, c, ((r + c) % 2 == 0) ? d : bigint(-d));
        }
    return adj;
}

IntMatrix lattice_row_basis(const IntMatrix& gens) {
    IntMatrix a = gens;
    IntMatrix dummy = IntMatrix::identity(a.rows());
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        // gcd-reduce column below `row`
        for (;;) {
            std::size_t pr = a.rows();
            for (std::size_t r = row; r < a.rows(); ++r)
                if (a.get(r, col) != 0 && (pr == a.rows() || iabs(a.get(r, col)) < iabs(a.get(pr, col))))
                    pr = r;
            if (pr == a.rows()) break;
            swap_rows(a, dummy, row, pr);
            bool done = true;
            for (std::size_t r = row + 1; r < a.rows(); ++r)
                if (a.get(r, col) != 0) {
                    bigint q = a.get(r, col) / a.get(row, col);
                    row_op(a, dummy, r, row, q);
                    if (a.get(r, col) != 0) done = false;
                }
            if (done) break;
        }
        if (row < a.rows() && a.get(row, col) != 0) {
            if (a.get(row, col) < 0) negate_row(a, dummy, row);
            ++row;
        }
    }
    IntMatrix basis(row, a.cols());
    for (std::size_t r = 0; r < row; ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) basis.set(r, c, a.get(r, c));
    return basis;
}

FieldMatrix reduce_mod(const IntMatrix& a, const Field& f) {
    FieldMatrix m(f, a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) {
            bigint v = a.get(r, c) % f.p();
            if (v < 0) v += f.p();
            m.set(r, c, fe(v.convert_to<unsigned>()));
        }
    return m;
}

}  // namespace spinlie
