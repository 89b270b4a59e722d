#include "spinlie/rep.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <map>
#include <stdexcept>

namespace spinlie {

// --- SparseMat ----------------------------------------------------------------

void SparseMat::add(std::size_t r, std::size_t c, fe v, const Field& f) {
    if (!v) return;
    auto& col = col_entries[c];
    for (auto& [row, val] : col)
        if (row == r) {
            val = f.add(val, v);
            if (!val) col.erase(std::find_if(col.begin(), col.end(),
                                             [&](auto& e) { return e.first == r; }));
            return;
        }
    col.emplace_back(std::uint32_t(r), v);
}

std::vector<fe> SparseMat::apply(const std::vector<fe>& v, const Field& f) const {
    if (v.size() != cols) throw std::invalid_argument("SparseMat::apply: length mismatch");
    std::vector<fe> out(rows, 0);
    for (std::size_t c = 0; c < cols; ++c) {
        if (!v[c]) continue;
        for (auto& [r, val] : col_entries[c]) out[r] = f.add(out[r], f.mul(val, v[c]));
    }
    return out;
}

FieldMatrix SparseMat::to_dense(const Field& f) const {
    FieldMatrix m(f, rows, cols);
    for (std::size_t c = 0; c < cols; ++c)
        for (auto& [r, val] : col_entries[c]) m.set(r, c, val);
    return m;
}

bool SparseMat::is_zero() const {
    for (auto& col : col_entries)
        if (!col.empty()) return false;
    return true;
}

// --- Representation -----------------------------------------------------------

Representation Representation::minuscule(std::shared_ptr<const ChevalleyAlgebra> alg,
                                         std::vector<RootVec> weights, std::string desc) {
    Representation rep;
    rep.alg_ = std::move(alg);
    const ChevalleyAlgebra& A = *rep.alg_;
    const RootSystem& R = A.roots();
    const Field& f = A.field();
    rep.dim_ = weights.size();
    rep.weights_ = std::move(weights);
    rep.desc_ = std::move(desc);
    rep.full_ = true;

    std::map<std::vector<int>, std::size_t> widx;
    for (std::size_t i = 0; i < rep.dim_; ++i) widx[rep.weights_[i].d] = i;
    if (widx.size() != rep.dim_)
        throw std::invalid_argument("minuscule: repeated weights");

    // lambda - lambda_0 in simple-basis coordinates, for the module signs
    const RootVec& l0 = rep.weights_[0];
    std::vector<std::vector<int>> qc(rep.dim_);
    for (std::size_t i = 0; i < rep.dim_; ++i) {
        RootVec diff = rep.weights_[i];
        for (int j = 0; j < R.rank(); ++j) diff.d[j] -= l0.d[j];
        qc[i] = R.root_coords(diff);
    }

    rep.gens_.reserve(A.dim());
    rep.action_.reserve(A.dim());
    for (std::size_t g = 0; g < A.dim(); ++g) rep.gens_.push_back(A.basis_element(g));

    for (int k = 0; k < A.rank(); ++k) {
        SparseMat m(rep.dim_, rep.dim_);
        for (std::size_t i = 0; i < rep.dim_; ++i)
            m.add(i, i, f.from_int(A.weight_pairing(rep.weights_[i], k)), f);
        rep.action_.push_back(std::move(m));
    }
    for (std::size_t a = 0; a < R.size(); ++a) {
        SparseMat m(rep.dim_, rep.dim_);
        const RootVec& al = R.root(a);
        for (std::size_t i = 0; i < rep.dim_; ++i) {
            auto it = widx.find((rep.weights_[i] + al).d);
            if (it == widx.end()) continue;
            int s = A.cocycle().module_sign(a, qc[i]);
            m.add(it->second, i, f.from_int(s), f);
        }
        rep.action_.push_back(std::move(m));
    }
    return rep;
}

Representation Representation::restricted(const Representation& rep, std::vector<Element> basis,
                                          std::string desc) {
    if (!rep.full_) throw std::invalid_argument("restricted: base must be a full-algebra module");
    const Field& f = rep.field();
    Representation out;
    out.alg_ = rep.alg_;
    out.dim_ = rep.dim_;
    out.weights_ = rep.weights_;
    out.desc_ = std::move(desc);
    out.full_ = false;
    out.gens_ = std::move(basis);
    out.action_.reserve(out.gens_.size());
    for (const auto& x : out.gens_) {
        SparseMat m(rep.dim_, rep.dim_);
        for (std::size_t g = 0; g < x.size(); ++g) {
            if (!x[g]) continue;
            const SparseMat& a = rep.action_[g];
            for (std::size_t c = 0; c < a.cols; ++c)
                for (auto& [r, val] : a.col_entries[c]) m.add(r, c, f.mul(x[g], val), f);
        }
        out.action_.push_back(std::move(m));
    }
    return out;
}

Representation Representation::direct_sum(const Representation& a, const Representation& b) {
    if (a.alg_ != b.alg_) throw std::invalid_argument("direct_sum: different algebras");
    if (!a.full_ || !b.full_) throw std::invalid_argument("direct_sum: full-algebra modules only");
    Representation out;
    out.alg_ = a.alg_;
    out.dim_ = a.dim_ + b.dim_;
    out.full_ = true;
    out.gens_ = a.gens_;
    out.desc_ = a.desc_ + "+" + b.desc_;
    out.weights_ = a.weights_;
    out.weights_.insert(out.weights_.end(), b.weights_.begin(), b.weights_.end());
    out.action_.reserve(a.action_.size());
    for (std::size_t g = 0; g < a.action_.size(); ++g) {
        SparseMat m(out.dim_, out.dim_);
        for (std::size_t c = 0; c < a.dim_; ++c)
            m.col_entries[c] = a.action_[g].col_entries[c];
        for (std::size_t c = 0; c < b.dim_; ++c) {
            auto& dst = m.col_entries[a.dim_ + c];
            for (auto& [r, val] : b.action_[g].col_entries[c])
                dst.emplace_back(std::uint32_t(a.dim_ + r), val);
        }
        out.action_.push_back(std::move(m));
    }
    return out;
}

FieldMatrix Representation::rho(const Element& x) const {
    if (x.size() != n_generators())
        throw std::invalid_argument("rho: coordinate length must match the generator count");
    const Field& f = field();
    FieldMatrix m(f, dim_, dim_);
    for (std::size_t g = 0; g < x.size(); ++g) {
        if (!x[g]) continue;
        const SparseMat& a = action_[g];
        for (std::size_t c = 0; c < a.cols; ++c)
            for (auto& [r, val] : a.col_entries[c])
                m.set(r, c, f.add(m.get(r, c), f.mul(x[g], val)));
    }
    return m;
}

std::vector<fe> Representation::apply(const Element& x, const std::vector<fe>& v) const {
    if (x.size() != n_generators())
        throw std::invalid_argument("apply: coordinate length must match the generator count");
    const Field& f = field();
    std::vector<fe> out(dim_, 0);
    for (std::size_t g = 0; g < x.size(); ++g) {
        if (!x[g]) continue;
        const SparseMat& a = action_[g];
        for (std::size_t c = 0; c < a.cols; ++c) {
            if (!v[c]) continue;
            fe s = f.mul(x[g], v[c]);
            for (auto& [r, val] : a.col_entries[c]) out[r] = f.add(out[r], f.mul(val, s));
        }
    }
    return out;
}

// --- standard modules -----------------------------------------------------------

Representation vector_rep(std::shared_ptr<const ChevalleyAlgebra> alg) {
    const RootSystem& R = alg->roots();
    if (R.type() != RSType::D) throw std::invalid_argument("vector_rep: D_r only");
    int r = R.rank();
    std::vector<RootVec> w;
    for (int s : {2, -2})
        for (int i = 0; i < r; ++i) {
            RootVec v;
            v.d.assign(r, 0);
            v.d[i] = s;
            w.push_back(std::move(v));
        }
    return Representation::minuscule(std::move(alg), std::move(w), "vector");
}

Representation halfspin_rep(std::shared_ptr<const ChevalleyAlgebra> alg, int parity) {
    const RootSystem& R = alg->roots();
    if (R.type() != RSType::D)
        throw std::invalid_argument("halfspin_rep: D_r only");
    int r = R.rank();
    std::vector<RootVec> w;
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
        if (int(__builtin_popcount(mask)) % 2 != (parity & 1)) continue;
        RootVec v;
        v.d.assign(r, 1);
        for (int i = 0; i < r; ++i)
            if (mask & (1u << i)) v.d[i] = -1;
        w.push_back(std::move(v));
    }
    return Representation::minuscule(std::move(alg), std::move(w),
                                     parity ? "halfspin-" : "halfspin+");
}

Representation halfspin_rep(int r, int parity, LatticeTag tag, FieldSpec fs) {
    auto rs = std::make_shared<const RootSystem>(RootSystem::build(RSType::D, r));
    auto alg = std::make_shared<const ChevalleyAlgebra>(
        ChevalleyAlgebra::build(rs, CharacterLattice::make(*rs, tag), fs));
    return halfspin_rep(alg, parity);
}

Representation vector_rep(int r, LatticeTag tag, FieldSpec fs) {
    auto rs = std::make_shared<const RootSystem>(RootSystem::build(RSType::D, r));
    auto alg = std::make_shared<const ChevalleyAlgebra>(
        ChevalleyAlgebra::build(rs, CharacterLattice::make(*rs, tag), fs));
    return vector_rep(alg);
}

Representation e8_restriction_halfspin(FieldSpec fs) {
    auto rs = std::make_shared<const RootSystem>(RootSystem::build(RSType::E8, 8));
    auto alg = std::make_shared<const ChevalleyAlgebra>(
        ChevalleyAlgebra::build(rs, CharacterLattice::make(*rs, LatticeTag::Adjoint), fs));
    const RootSystem& R = alg->roots();
    const Field& f = alg->field();

    auto half_integer = [&](std::size_t a) { return R.root(a).d[0] % 2 != 0; };
    std::vector<std::size_t> phi1;
    for (std::size_t a = 0; a < R.size(); ++a)
        if (half_integer(a)) phi1.push_back(a);
    std::map<std::size_t, std::size_t> midx;
    for (std::size_t i = 0; i < phi1.size(); ++i) midx[phi1[i]] = i;

    Representation rep;
    rep.alg_ = alg;
    rep.dim_ = phi1.size();
    rep.full_ = false;
    rep.desc_ = "e8-halfspin-restriction";
    for (std::size_t i = 0; i < phi1.size(); ++i) rep.weights_.push_back(R.root(phi1[i]));

    // torus generators act diagonally by the pairings
    for (int k = 0; k < alg->rank(); ++k) {
        rep.gens_.push_back(alg->basis_element(k));
        SparseMat m(rep.dim_, rep.dim_);
        for (std::size_t i = 0; i < rep.dim_; ++i)
            m.add(i, i, f.from_int(alg->pairing(phi1[i], k)), f);
        rep.action_.push_back(std::move(m));
    }
    // integer-coordinate root vectors act by the bracket
    for (std::size_t a = 0; a < R.size(); ++a) {
        if (half_integer(a)) continue;
        rep.gens_.push_back(alg->basis_element(alg->root_index(a)));
        SparseMat m(rep.dim_, rep.dim_);
        for (std::size_t i = 0; i < rep.dim_; ++i) {
            auto s = R.sum_index(a, phi1[i]);
            if (!s) continue;
            m.add(midx.at(*s), i, f.from_int(alg->cocycle().constant_sign(a, phi1[i])), f);
        }
        rep.action_.push_back(std::move(m));
    }
    return rep;
}

std::vector<Representation::Element> annihilator_subalgebra(const Representation& rep,
                                                            const std::vector<fe>& v) {
    const Field& f = rep.field();
    FieldMatrix m(f, rep.dim(), rep.n_generators());
    for (std::size_t g = 0; g < rep.n_generators(); ++g) {
        auto img = rep.action(g).apply(v, f);
        for (std::size_t i = 0; i < rep.dim(); ++i)
            if (img[i]) m.set(i, g, img[i]);
    }
    FieldMatrix ker = kernel_basis(m);
    std::vector<Representation::Element> basis;
    basis.reserve(ker.rows());
    for (std::size_t r = 0; r < ker.rows(); ++r) {
        Representation::Element x(rep.n_generators(), 0);
        for (std::size_t c = 0; c < rep.n_generators(); ++c) x[c] = ker.get(r, c);
        if (rep.is_full_algebra()) {
            basis.push_back(std::move(x));
        } else {
            // express in parent-algebra coordinates
            Representation::Element y(rep.algebra().dim(), 0);
            for (std::size_t g = 0; g < rep.n_generators(); ++g)
                for (std::size_t i = 0; i < y.size(); ++i)
                    y[i] = f.add(y[i], f.mul(x[g], rep.generator(g)[i]));
            basis.push_back(std::move(y));
        }
    }
    return basis;
}

fe vector_rep_quadratic(const Representation& vrep, const std::vector<fe>& v) {
    const Field& f = vrep.field();
    const auto& w = vrep.weights();
    std::map<std::vector<int>, std::size_t> widx;
    for (std::size_t i = 0; i < w.size(); ++i) widx[w[i].d] = i;
    fe q = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        std::size_t j = widx.at((-w[i]).d);
        if (i < j) q = f.add(q, f.mul(v[i], v[j]));
    }
    return q;
}

BTypeResult b_type_spin(int r, FieldSpec fs) {
    BTypeResult out;
    out.vec = vector_rep(r, LatticeTag::SimplyConnected, fs);
    const Field& f = out.vec.field();
    out.y.assign(out.vec.dim(), 0);
    out.y[0] = 1;      // v_{eps_1}
    out.y[r] = 1;      // v_{-eps_1}
    if (vector_rep_quadratic(out.vec, out.y) == 0)
        throw std::logic_error("b_type_spin: anchor vector is isotropic");
    out.basis = annihilator_subalgebra(out.vec, out.y);
    Representation hs = halfspin_rep(out.vec.algebra_ptr(), 0);
    out.spin = Representation::restricted(hs, out.basis, "spin-odd");
    return out;
}

// --- Jordan types ----------------------------------------------------------------

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] <= 0) throw std::invalid_argument("Partition: parts must be positive");
        if (i && parts[i] > parts[i - 1])
            throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }
}

int Partition::total() const {
    int t = 0;
    for (int p : parts) t += p;
    return t;
}

Partition jordan_type(const FieldMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("jordan_type: square matrices only");
    std::size_t n = m.rows();
    std::vector<std::size_t> ranks;  // ranks[k] = rank(m^k), ranks[0] = n
    ranks.push_back(n);
    FieldMatrix pw = m;
    while (!pw.is_zero()) {
        ranks.push_back(rank(pw));
        if (ranks.size() > n + 1) throw std::domain_error("jordan_type: matrix is not nilpotent");
        pw = pw.mul(m);
    }
    ranks.push_back(0);
    std::vector<int> parts;
    // number of blocks of size >= k is rank(m^{k-1}) - rank(m^k)
    for (std::size_t k = 1; k + 1 < ranks.size() + 1; ++k) {
        std::size_t ge_k = ranks[k - 1] - (k < ranks.size() ? ranks[k] : 0);
        std::size_t ge_k1 = k < ranks.size() ? ranks[k] - (k + 1 < ranks.size() ? ranks[k + 1] : 0) : 0;
        for (std::size_t i = ge_k1; i < ge_k; ++i) parts.push_back(int(k));
    }
    std::sort(parts.rbegin(), parts.rend());
    return Partition(parts);
}

// --- nilpotent partition representatives (p odd) ----------------------------------

namespace {

bool is_square(const Field& f, fe a) {
    if (f.p() == 2) return true;
    if (a == 0) return true;
    return f.pow(a, (f.order() - 1) / 2) == 1;
}

fe field_sqrt_odd(const Field& f, fe a) {
    for (unsigned x = 0; x < f.order(); ++x)
        if (f.mul(fe(x), fe(x)) == a) return fe(x);
    throw std::domain_error("field_sqrt_odd: not a square");
}

// Gram-Schmidt diagonalization: returns P with P^T S P diagonal (columns of P
// are the new basis); requires char != 2 and S symmetric nondegenerate.
std::pair<FieldMatrix, std::vector<fe>> diagonalize_form(const FieldMatrix& s) {
    const Field& f = s.field();
    std::size_t n = s.rows();
    // working basis as columns
    std::vector<std::vector<fe>> basis(n, std::vector<fe>(n, 0));
    for (std::size_t i = 0; i < n; ++i) basis[i][i] = 1;
    auto form = [&](const std::vector<fe>& u, const std::vector<fe>& v) {
        fe acc = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!u[i]) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (v[j] && s.get(i, j)) acc = f.add(acc, f.mul(f.mul(u[i], v[j]), s.get(i, j)));
        }
        return acc;
    };
    std::vector<std::vector<fe>> done;
    std::vector<fe> diag;
    std::vector<std::vector<fe>> rest = basis;
    while (!rest.empty()) {
        // pick an anisotropic vector
        std::size_t pick = rest.size();
        for (std::size_t i = 0; i < rest.size(); ++i)
            if (form(rest[i], rest[i]) != 0) { pick = i; break; }
        if (pick == rest.size()) {
            // all basis vectors isotropic; find u, v with B(u,v) != 0
            bool found = false;
            for (std::size_t i = 0; i < rest.size() && !found; ++i)
                for (std::size_t j = i + 1; j < rest.size() && !found; ++j)
                    if (form(rest[i], rest[j]) != 0) {
                        for (std::size_t k = 0; k < n; ++k)
                            rest[i][k] = f.add(rest[i][k], rest[j][k]);
                        pick = i;
                        found = true;
                    }
            if (!found) throw std::domain_error("diagonalize_form: degenerate form");
        }
        std::vector<fe> v = rest[pick];
        rest.erase(rest.begin() + pick);
        fe qv = form(v, v);
        diag.push_back(qv);
        done.push_back(v);
        fe inv = f.inv(qv);
        for (auto& u : rest) {
            fe c = f.mul(form(u, v), inv);
            if (c)
                for (std::size_t k = 0; k < n; ++k) u[k] = f.sub(u[k], f.mul(c, v[k]));
        }
    }
    FieldMatrix p(f, n, n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) p.set(r, c, done[c][r]);
    return {p, diag};
}

// solve a x^2 + b y^2 = t over GF(p), p odd (always solvable for ab != 0)
std::pair<fe, fe> represent_binary(const Field& f, fe a, fe b, fe t) {
    for (unsigned x = 0; x < f.order(); ++x) {
        fe rem = f.sub(t, f.mul(a, f.mul(fe(x), fe(x))));
        fe u = f.div(rem, b);
        if (is_square(f, u)) return {fe(x), field_sqrt_odd(f, u)};
    }
    throw std::domain_error("represent_binary: no solution");
}

// R with R^T diag(d2) R = diag(d1); the two diagonal forms must be isometric
FieldMatrix diag_isometry(const Field& f, const std::vector<fe>& d2, const std::vector<fe>& d1) {
    std::size_t n = d1.size();
    // working basis (columns, in d2-coordinates) with diagonal Gram `cur`
    std::vector<std::vector<fe>> basis(n, std::vector<fe>(n, 0));
    std::vector<fe> cur = d2;
    for (std::size_t i = 0; i < n; ++i) basis[i][i] = 1;
    auto form = [&](const std::vector<fe>& u, const std::vector<fe>& v) {
        fe acc = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (u[i] && v[i] && d2[i]) acc = f.add(acc, f.mul(f.mul(u[i], v[i]), d2[i]));
        return acc;
    };
    std::vector<std::vector<fe>> cols;
    std::vector<std::vector<fe>> rest = basis;
    std::vector<fe> restq = cur;
    for (std::size_t step = 0; step < n; ++step) {
        fe target = d1[step];
        std::vector<fe> y(n, 0);
        bool ok = false;
        // single remaining vector: the ratio must be a square
        if (rest.size() == 1) {
            fe ratio = f.div(target, restq[0]);
            if (!is_square(f, ratio)) throw std::domain_error("diag_isometry: forms not isometric");
            fe c = field_sqrt_odd(f, ratio);
            for (std::size_t k = 0; k < n; ++k) y[k] = f.mul(c, rest[0][k]);
            ok = true;
        } else {
            // try single vectors first, then binary combinations
            for (std::size_t i = 0; i < rest.size() && !ok; ++i) {
                fe ratio = f.div(target, restq[i]);
                if (is_square(f, ratio)) {
                    fe c = field_sqrt_odd(f, ratio);
                    for (std::size_t k = 0; k < n; ++k) y[k] = f.mul(c, rest[i][k]);
                    ok = true;
                }
            }
            if (!ok) {
                auto [x1, x2] = represent_binary(f, restq[0], restq[1], target);
                for (std::size_t k = 0; k < n; ++k)
                    y[k] = f.add(f.mul(x1, rest[0][k]), f.mul(x2, rest[1][k]));
                ok = true;
            }
        }
        cols.push_back(y);
        // project the remaining space orthogonally to y and re-diagonalize it
        std::vector<std::vector<fe>> next;
        fe qy = form(y, y);
        fe inv = f.inv(qy);
        for (auto& u : rest) {
            fe c = f.mul(form(u, y), inv);
            std::vector<fe> w(n);
            for (std::size_t k = 0; k < n; ++k) w[k] = f.sub(u[k], f.mul(c, y[k]));
            bool zero = true;
            for (fe v : w)
                if (v) { zero = false; break; }
            if (!zero) next.push_back(std::move(w));
        }
        // drop one dependent vector (the projection has rank rest.size() - 1)
        // and re-orthogonalize via Gram-Schmidt
        std::vector<std::vector<fe>> ortho;
        std::vector<fe> orthoq;
        for (auto& u : next) {
            std::vector<fe> w = u;
            for (std::size_t i = 0; i < ortho.size(); ++i) {
                fe c = f.mul(form(w, ortho[i]), f.inv(orthoq[i]));
                if (c)
                    for (std::size_t k = 0; k < n; ++k) w[k] = f.sub(w[k], f.mul(c, ortho[i][k]));
            }
            fe qw = form(w, w);
            if (qw != 0 && ortho.size() + 1 < n - step) {
                ortho.push_back(std::move(w));
                orthoq.push_back(qw);
            } else if (qw != 0 && ortho.size() < n - step - 1) {
                ortho.push_back(std::move(w));
                orthoq.push_back(qw);
            }
        }
        // handle leftover isotropic directions by pairing (rare; only when the
        // greedy Gram-Schmidt above leaves vectors with q = 0)
        if (ortho.size() < n - step - 1) {
            std::vector<std::vector<fe>> iso;
            for (auto& u : next) {
                std::vector<fe> w = u;
                for (std::size_t i = 0; i < ortho.size(); ++i) {
                    fe c = f.mul(form(w, ortho[i]), f.inv(orthoq[i]));
                    if (c)
                        for (std::size_t k = 0; k < n; ++k)
                            w[k] = f.sub(w[k], f.mul(c, ortho[i][k]));
                }
                bool zero = true;
                for (fe v : w)
                    if (v) { zero = false; break; }
                if (!zero && form(w, w) == 0) iso.push_back(std::move(w));
            }
            for (std::size_t i = 0; i < iso.size() && ortho.size() < n - step - 1; ++i)
                for (std::size_t j = i + 1; j < iso.size() && ortho.size() < n - step - 1; ++j)
                    if (form(iso[i], iso[j]) != 0) {
                        std::vector<fe> w(n);
                        for (std::size_t k = 0; k < n; ++k) w[k] = f.add(iso[i][k], iso[j][k]);
                        fe qw = form(w, w);
                        if (!qw) continue;
                        for (std::size_t t2 = 0; t2 < ortho.size(); ++t2) {
                            fe c = f.mul(form(w, ortho[t2]), f.inv(orthoq[t2]));
                            if (c)
                                for (std::size_t k = 0; k < n; ++k)
                                    w[k] = f.sub(w[k], f.mul(c, ortho[t2][k]));
                        }
                        qw = form(w, w);
                        if (qw) {
                            ortho.push_back(w);
                            orthoq.push_back(qw);
                        }
                    }
        }
        if (ortho.size() != n - step - 1)
            throw std::logic_error("diag_isometry: projection rank drop");
        rest = std::move(ortho);
        restq = std::move(orthoq);
    }
    FieldMatrix rmat(f, n, n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) rmat.set(r, c, cols[c][r]);
    return rmat;
}

// U with U^T s_to U = s_from (an isometry carrying the `from` form onto `to`
// coordinates)
FieldMatrix form_isometry(const FieldMatrix& s_from, const FieldMatrix& s_to) {
    const Field& f = s_from.field();
    auto [p1, diag1] = diagonalize_form(s_from);
    auto [p2, diag2] = diagonalize_form(s_to);
    FieldMatrix r = diag_isometry(f, diag2, diag1);  // r^T diag2 r = diag1
    return p2.mul(r).mul(inverse(p1));
}

}  // namespace

Representation::Element nilpotent_from_partition(const Representation& vrep, int n,
                                                 const Partition& lambda) {
    const Field& f = vrep.field();
    if (f.p() == 2) throw std::invalid_argument("nilpotent_from_partition: odd characteristic only");
    const ChevalleyAlgebra& alg = vrep.algebra();
    int r = alg.rank();
    int dim = 2 * r;
    if (lambda.total() != n) throw std::invalid_argument("nilpotent_from_partition: partition total");
    if (n != 2 * r && n != 2 * r - 1)
        throw std::invalid_argument("nilpotent_from_partition: n must be 2r or 2r-1");
    bool odd_case = (n == 2 * r - 1);

    // validate: even parts with even multiplicity
    std::map<int, int> mult;
    for (int p : lambda.parts) mult[p]++;
    for (auto& [p, m] : mult)
        if (p % 2 == 0 && m % 2 != 0)
            throw std::invalid_argument("nilpotent_from_partition: even parts need even multiplicity");

    std::vector<int> parts = lambda.parts;
    int anchor_block = -1;
    if (odd_case) {
        parts.push_back(1);  // the extra 1-block spanning the anchor line
    }

    // --- invariant form of the vector rep: S(v_l, v_{-l}) = q(pair) ----------
    const auto& w = vrep.weights();
    std::map<std::vector<int>, std::size_t> widx;
    for (std::size_t i = 0; i < w.size(); ++i) widx[w[i].d] = i;
    std::vector<std::size_t> negidx(dim);
    for (std::size_t i = 0; i < w.size(); ++i) negidx[i] = widx.at((-w[i]).d);
    // pair id: index of the positive-weight member
    std::vector<std::size_t> pairid(dim);
    for (std::size_t i = 0; i < w.size(); ++i) pairid[i] = std::min(i, negidx[i]);
    std::map<std::size_t, std::size_t> pairno;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (pairid[i] == i) {
            std::size_t k = pairno.size();
            pairno[i] = k;
        }
    if (!vrep.is_full_algebra())
        throw std::invalid_argument("nilpotent_from_partition: full-algebra module required");
    // equations s_{a,i} q[pair(j)] + s_{a,neg(j)} q[pair(i)] = 0 from invariance
    FieldMatrix eqm(f, 0, 0);
    {
        std::vector<std::vector<fe>> rows;
        const RootSystem& R = alg.roots();
        for (std::size_t a = 0; a < R.size(); ++a) {
            const SparseMat& act = vrep.action(alg.root_index(a));
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (act.col_entries[i].empty()) continue;
                auto [j, s_ai] = act.col_entries[i][0];
                std::size_t nj = negidx[j];
                fe s_anj = 0;
                for (auto& [tr, tv] : act.col_entries[nj])
                    if (tr == negidx[i]) s_anj = tv;
                std::vector<fe> row(pairno.size(), 0);
                std::size_t p1 = pairno.at(pairid[j]), p2 = pairno.at(pairid[i]);
                row[p1] = f.add(row[p1], s_ai);
                row[p2] = f.add(row[p2], s_anj);
                rows.push_back(std::move(row));
            }
        }
        eqm = FieldMatrix(f, rows.size(), pairno.size());
        for (std::size_t rr = 0; rr < rows.size(); ++rr)
            for (std::size_t c = 0; c < pairno.size(); ++c)
                if (rows[rr][c]) eqm.set(rr, c, rows[rr][c]);
    }
    FieldMatrix qker = kernel_basis(eqm);
    if (qker.rows() != 1) throw std::logic_error("nilpotent_from_partition: invariant form not unique");
    std::vector<fe> q(pairno.size());
    {
        fe scale = f.inv(qker.get(0, 0));
        for (std::size_t k = 0; k < q.size(); ++k) {
            q[k] = f.mul(qker.get(0, k), scale);
            if (!q[k]) throw std::logic_error("nilpotent_from_partition: degenerate invariant form");
        }
    }

    // hyperbolic model: u_k = v_{w_pos(k)} for k < r, u_{2r-1-k} = v_{-w} / q;
    // transition T: rep coords = T * model coords
    std::vector<std::size_t> posw;  // the dim/2 pair representatives, in order
    for (std::size_t i = 0; i < w.size(); ++i)
        if (pairid[i] == i) posw.push_back(i);
    FieldMatrix T(f, dim, dim);
    for (int k = 0; k < r; ++k) {
        T.set(posw[k], k, 1);
        T.set(negidx[posw[k]], dim - 1 - k, f.inv(q[pairno.at(posw[k])]));
    }

    // --- model nilpotent and its Gram, block by block -------------------------
    FieldMatrix A(f, dim, dim);   // model coordinates (block basis)
    FieldMatrix G(f, dim, dim);   // model Gram
    std::vector<int> odd_parts, even_parts;
    for (int p : parts) (p % 2 ? odd_parts : even_parts).push_back(p);
    // scalars on the odd blocks, adjustable for anchor/discriminant matching
    std::vector<fe> odd_scalar(odd_parts.size(), 1);
    if (odd_case) {
        // the appended part is the last odd part (value 1); give it B(z,z) = 2
        anchor_block = int(odd_parts.size()) - 1;
        odd_scalar[anchor_block] = f.from_int(2);
    }
    auto build_blocks = [&](int& pos, std::size_t& anchor_coord) {
        A = FieldMatrix(f, dim, dim);
        G = FieldMatrix(f, dim, dim);
        pos = 0;
        // paired even parts: hyperbolic blocks
        for (std::size_t i = 0; i + 1 < even_parts.size(); i += 2) {
            int d = even_parts[i];
            int e0 = pos, f0 = pos + d;
            for (int k = 1; k < d; ++k) {
                A.set(e0 + k - 1, e0 + k, 1);                 // A e_k = e_{k-1}
                A.set(f0 + k, f0 + k - 1, f.neg(fe(1)));      // A f_{k-1} = -f_k
            }
            for (int k = 0; k < d; ++k) {
                G.set(e0 + k, f0 + k, 1);
                G.set(f0 + k, e0 + k, 1);
            }
            pos += 2 * d;
        }
        // odd parts: single Jordan blocks with (-1)^i a on the antidiagonal
        for (std::size_t i = 0; i < odd_parts.size(); ++i) {
            int d = odd_parts[i];
            int w0 = pos;
            for (int k = 1; k < d; ++k) A.set(w0 + k - 1, w0 + k, 1);
            for (int k = 0; k < d; ++k) {
                fe val = odd_scalar[i];
                if (k % 2) val = f.neg(val);
                G.set(w0 + k, w0 + d - 1 - k, val);
            }
            if (int(i) == anchor_block) anchor_coord = std::size_t(w0);
            pos += d;
        }
    };
    int pos = 0;
    std::size_t anchor_coord = 0;
    build_blocks(pos, anchor_coord);
    if (pos != dim) throw std::logic_error("nilpotent_from_partition: block layout");

    // discriminant match against the hyperbolic Gram (mod squares); adjust a
    // non-anchor odd block if needed
    FieldMatrix H(f, dim, dim);
    for (int k = 0; k < dim; ++k) H.set(k, dim - 1 - k, 1);
    if (!is_square(f, f.div(determinant(G), determinant(H)))) {
        std::size_t adj = 0;
        while (int(adj) == anchor_block) ++adj;
        if (adj >= odd_parts.size())
            throw std::logic_error("nilpotent_from_partition: no block to fix the discriminant");
        // multiply by a fixed non-square
        fe nu = 0;
        for (unsigned x = 2; x < f.order(); ++x)
            if (!is_square(f, fe(x))) { nu = fe(x); break; }
        odd_scalar[adj] = f.mul(odd_scalar[adj], nu);
        build_blocks(pos, anchor_coord);
    }

    // isometry U: model -> hyperbolic coordinates, U^T H U = G
    FieldMatrix U = form_isometry(G, H);
    FieldMatrix Ahyp = U.mul(A).mul(inverse(U));

    if (odd_case) {
        // move the image of the anchor line onto y = u_0 + u_{2r-1} by a
        // reflection (B(y,y) = 2 matches the anchor scalar)
        std::vector<fe> z(dim, 0);
        for (int k = 0; k < dim; ++k) z[k] = U.get(k, anchor_coord);
        std::vector<fe> y(dim, 0);
        y[0] = 1;
        y[dim - 1] = 1;
        auto formH = [&](const std::vector<fe>& a, const std::vector<fe>& b) {
            fe acc = 0;
            for (int k = 0; k < dim; ++k)
                acc = f.add(acc, f.mul(a[k], b[dim - 1 - k]));
            return acc;
        };
        auto reflect_mat = [&](const std::vector<fe>& v) {
            // tau_v(x) = x - 2 B(x,v)/B(v,v) * v
            FieldMatrix M = identity_matrix(f, dim);
            fe bvv = formH(v, v);
            fe c = f.div(f.from_int(2), bvv);
            for (int col = 0; col < dim; ++col) {
                // B(e_col, v) = v[dim-1-col]
                fe bxv = v[std::size_t(dim - 1 - col)];
                if (!bxv) continue;
                fe s = f.mul(c, bxv);
                for (int row = 0; row < dim; ++row)
                    M.set(row, col, f.sub(M.get(row, col), f.mul(s, v[row])));
            }
            return M;
        };
        std::vector<fe> diff(dim), sum(dim);
        for (int k = 0; k < dim; ++k) {
            diff[k] = f.sub(z[k], y[k]);
            sum[k] = f.add(z[k], y[k]);
        }
        FieldMatrix R = identity_matrix(f, dim);
        bool same = true;
        for (int k = 0; k < dim; ++k)
            if (diff[k]) { same = false; break; }
        if (!same) {
            if (formH(diff, diff) != 0) {
                R = reflect_mat(diff);  // tau_{z-y}: z -> y
            } else {
                R = reflect_mat(y).mul(reflect_mat(sum));  // z -> -y -> y
            }
        }
        Ahyp = R.mul(Ahyp).mul(inverse(R));
    }

    // to representation coordinates
    FieldMatrix Arep = T.mul(Ahyp).mul(inverse(T));

    // solve for the algebra element with rho_V(x) = Arep
    std::size_t m = alg.dim();
    FieldMatrix sys(f, std::size_t(dim) * dim, m);
    std::vector<fe> rhs(std::size_t(dim) * dim, 0);
    for (std::size_t g = 0; g < m; ++g) {
        const SparseMat& act = vrep.action(g);
        for (std::size_t c = 0; c < act.cols; ++c)
            for (auto& [row, val] : act.col_entries[c]) sys.set(row * dim + c, g, val);
    }
    for (int row = 0; row < dim; ++row)
        for (int c = 0; c < dim; ++c) rhs[std::size_t(row) * dim + c] = Arep.get(row, c);
    auto x = solve(sys, rhs);
    if (!x) throw std::logic_error("nilpotent_from_partition: matrix not in the algebra image");

    // re-verify the Jordan type (and the anchor) after transfer
    Partition found = jordan_type(vrep.rho(*x));
    std::vector<int> expect = parts;
    std::sort(expect.rbegin(), expect.rend());
    if (found.parts != expect)
        throw std::logic_error("nilpotent_from_partition: Jordan type mismatch after transfer");
    if (odd_case) {
        std::vector<fe> y(dim, 0);
        y[posw[0]] = 1;
        y[negidx[posw[0]]] = f.inv(q[pairno.at(posw[0])]);
        for (fe v : vrep.apply(*x, y))
            if (v) throw std::logic_error("nilpotent_from_partition: anchor not annihilated");
    }
    return *x;
}

// --- torus combinatorics -----------------------------------------------------------

namespace {

long long weight_class(const RootVec& w, const ExponentVector& ev) {
    long long acc = 0;
    for (std::size_t i = 0; i < w.d.size(); ++i) acc += ev.c[i] * w.d[i];
    long long mod = 2 * ev.m;
    acc %= mod;
    if (acc < 0) acc += mod;
    return acc;
}

}  // namespace

std::size_t torus_fixed_dim(const std::vector<RootVec>& weights, const ExponentVector& ev) {
    if (ev.m < 1) throw std::invalid_argument("torus_fixed_dim: modulus must be >= 1");
    std::size_t n = 0;
    for (const auto& w : weights)
        if (weight_class(w, ev) == 0) ++n;
    return n;
}

std::size_t torus_max_eigenspace(const std::vector<RootVec>& weights, const ExponentVector& ev) {
    if (ev.m < 1) throw std::invalid_argument("torus_max_eigenspace: modulus must be >= 1");
    std::map<long long, std::size_t> buckets;
    for (const auto& w : weights) ++buckets[weight_class(w, ev)];
    std::size_t best = 0;
    for (auto& [k, v] : buckets) best = std::max(best, v);
    return best;
}

bool torus_noncentral(const RootSystem& rs, const ExponentVector& ev) {
    for (std::size_t a = 0; a < rs.size(); ++a)
        if (weight_class(rs.root(a), ev) != 0) return true;
    return false;
}

std::pair<ExponentVector, ExponentVector> triality_torus_image(const ExponentVector& ev) {
    if (ev.c.size() != 4) throw std::invalid_argument("triality_torus_image: rank 4 only");
    static const int p1[4][4] = {{1, 1, 1, -1}, {1, 1, -1, 1}, {1, -1, 1, 1}, {1, -1, -1, -1}};
    static const int p2[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {-1, 1, 1, -1}};
    auto image = [&](const int (*pat)[4]) {
        ExponentVector out;
        out.m = ev.m;
        out.c.resize(4);
        for (int i = 0; i < 4; ++i) {
            long long s = 0;
            for (int j = 0; j < 4; ++j) s += pat[i][j] * ev.c[j];
            if (s % 2 != 0)
                throw std::domain_error("triality_torus_image: half-sum not integral");
            long long v = (s / 2) % (2 * ev.m);
            if (v < 0) v += 2 * ev.m;
            out.c[i] = v;
        }
        return out;
    };
    return {image(p1), image(p2)};
}

// --- group elements ------------------------------------------------------------------

FieldMatrix unipotent_from_roots(const Representation& rep, const std::vector<std::size_t>& roots) {
    const Field& f = rep.field();
    if (f.p() != 2) throw std::invalid_argument("unipotent_from_roots: characteristic 2 only");
    const RootSystem& R = rep.algebra().roots();
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (pair_ip(R.root(roots[i]), R.root(roots[j])) != 0)
                throw std::invalid_argument("unipotent_from_roots: roots must be orthogonal");
    FieldMatrix g = identity_matrix(f, rep.dim());
    for (std::size_t a : roots) {
        if (!rep.is_full_algebra())
            throw std::invalid_argument("unipotent_from_roots: full-algebra module required");
        FieldMatrix e = rep.action(rep.algebra().root_index(a)).to_dense(f);
        FieldMatrix step = identity_matrix(f, rep.dim());
        for (std::size_t r2 = 0; r2 < rep.dim(); ++r2)
            for (std::size_t c = 0; c < rep.dim(); ++c)
                if (e.get(r2, c)) step.set(r2, c, f.add(step.get(r2, c), e.get(r2, c)));
        g = g.mul(step);
    }
    if (!(g.mul(g) == identity_matrix(f, rep.dim())))
        throw std::logic_error("unipotent_from_roots: product is not an involution");
    return g;
}

// --- persistence -----------------------------------------------------------------------

namespace {

void put_u64(std::string& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(char((v >> (8 * i)) & 0xff));
}

std::uint64_t get_u64(const std::string& buf, std::size_t& off) {
    if (off + 8 > buf.size()) throw std::runtime_error("representation file truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(std::uint8_t(buf[off + i])) << (8 * i);
    off += 8;
    return v;
}

std::string serialize(const Representation& rep) {
    std::string buf = "SLRP1";
    std::string desc = rep.describe();
    put_u64(buf, desc.size());
    buf += desc;
    const FieldSpec& fs = rep.field().spec();
    put_u64(buf, std::uint64_t(fs.p));
    put_u64(buf, std::uint64_t(fs.e));
    put_u64(buf, std::uint64_t(fs.poly));
    put_u64(buf, rep.dim());
    put_u64(buf, rep.n_generators());
    put_u64(buf, rep.is_full_algebra() ? 1 : 0);
    put_u64(buf, rep.algebra().dim());
    for (std::size_t g = 0; g < rep.n_generators(); ++g) {
        const auto& e = rep.generator(g);
        for (fe v : e) buf.push_back(char(v));
    }
    for (std::size_t g = 0; g < rep.n_generators(); ++g) {
        const SparseMat& m = rep.action(g);
        for (std::size_t c = 0; c < m.cols; ++c) {
            put_u64(buf, m.col_entries[c].size());
            for (auto& [r, v] : m.col_entries[c]) {
                put_u64(buf, r);
                buf.push_back(char(v));
            }
        }
    }
    put_u64(buf, rep.weights().size());
    if (!rep.weights().empty()) {
        put_u64(buf, rep.weights()[0].d.size());
        for (const auto& w : rep.weights())
            for (int d : w.d) put_u64(buf, std::uint64_t(std::int64_t(d)));
    }
    return buf;
}

std::uint64_t fnv1a(const std::string& buf) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : buf) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

std::uint64_t representation_digest(const Representation& rep) { return fnv1a(serialize(rep)); }

std::uint64_t save_representation(const Representation& rep, const std::string& path) {
    std::string buf = serialize(rep);
    std::uint64_t digest = fnv1a(buf);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("save_representation: cannot open " + path);
    out.write(buf.data(), std::streamsize(buf.size()));
    return digest;
}

Representation load_representation(std::shared_ptr<const ChevalleyAlgebra> alg,
                                   const std::string& path, std::uint64_t expect_digest) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_representation: cannot open " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (fnv1a(buf) != expect_digest)
        throw std::runtime_error("load_representation: digest mismatch");
    std::size_t off = 0;
    if (buf.compare(0, 5, "SLRP1") != 0)
        throw std::runtime_error("load_representation: bad magic");
    off = 5;
    std::size_t dlen = get_u64(buf, off);
    std::string desc = buf.substr(off, dlen);
    off += dlen;
    FieldSpec fs;
    fs.p = int(get_u64(buf, off));
    fs.e = int(get_u64(buf, off));
    fs.poly = unsigned(get_u64(buf, off));
    if (!(fs == alg->field().spec()))
        throw std::runtime_error("load_representation: field mismatch");
    std::size_t dim = get_u64(buf, off);
    std::size_t ngens = get_u64(buf, off);
    bool full = get_u64(buf, off) != 0;
    std::size_t algdim = get_u64(buf, off);
    if (algdim != alg->dim()) throw std::runtime_error("load_representation: algebra mismatch");

    Representation rep;
    rep.alg_ = std::move(alg);
    rep.dim_ = dim;
    rep.full_ = full;
    rep.desc_ = std::move(desc);
    rep.gens_.assign(ngens, Representation::Element(algdim, 0));
    for (std::size_t g = 0; g < ngens; ++g)
        for (std::size_t i = 0; i < algdim; ++i) {
            if (off >= buf.size()) throw std::runtime_error("representation file truncated");
            rep.gens_[g][i] = fe(std::uint8_t(buf[off++]));
        }
    rep.action_.assign(ngens, SparseMat(dim, dim));
    for (std::size_t g = 0; g < ngens; ++g)
        for (std::size_t c = 0; c < dim; ++c) {
            std::size_t cnt = get_u64(buf, off);
            for (std::size_t k = 0; k < cnt; ++k) {
                std::uint32_t r = std::uint32_t(get_u64(buf, off));
                if (off >= buf.size()) throw std::runtime_error("representation file truncated");
                fe v = fe(std::uint8_t(buf[off++]));
                rep.action_[g].col_entries[c].emplace_back(r, v);
            }
        }
    std::size_t nw = get_u64(buf, off);
    if (nw) {
        std::size_t rk = get_u64(buf, off);
        rep.weights_.assign(nw, RootVec{});
        for (std::size_t i = 0; i < nw; ++i) {
            rep.weights_[i].d.resize(rk);
            for (std::size_t j = 0; j < rk; ++j)
                rep.weights_[i].d[j] = int(std::int64_t(get_u64(buf, off)));
        }
    }
    return rep;
}

}  // namespace spinlie
