#include "spinlie/chevalley.hpp"

#include <stdexcept>

namespace spinlie {

const char* lattice_name(LatticeTag t) {
    switch (t) {
        case LatticeTag::SimplyConnected: return "simply-connected";
        case LatticeTag::HalfSpin: return "half-spin";
        case LatticeTag::Adjoint: return "adjoint";
    }
    return "?";
}

CharacterLattice CharacterLattice::make(const RootSystem& rs, LatticeTag tag) {
    int r = rs.rank();
    CharacterLattice out;
    out.tag = tag;
    switch (tag) {
        case LatticeTag::SimplyConnected:
            out.basis = rs.weight_basis();
            break;
        case LatticeTag::Adjoint: {
            out.basis = IntMatrix(r, r);
            for (int i = 0; i < r; ++i) {
                const RootVec& a = rs.root(rs.simple(i));
                for (int j = 0; j < r; ++j) out.basis.set(i, j, a.d[j]);
            }
            break;
        }
        case LatticeTag::HalfSpin: {
            if (rs.type() != RSType::D || r % 2 != 0)
                throw std::invalid_argument("half-spin lattice needs D_r with r even");
            // generated by the roots and one half-spin weight (1/2, ..., 1/2)
            IntMatrix gens(r + 1, r);
            for (int i = 0; i < r; ++i) {
                const RootVec& a = rs.root(rs.simple(i));
                for (int j = 0; j < r; ++j) gens.set(i, j, a.d[j]);
            }
            for (int j = 0; j < r; ++j) gens.set(r, j, 1);
            out.basis = lattice_row_basis(gens);
            if (out.basis.rows() != std::size_t(r))
                throw std::logic_error("half-spin lattice: rank drop");
            break;
        }
    }
    return out;
}

// --- asymmetry function ------------------------------------------------------

Cocycle::Cocycle(const RootSystem& rs) : rs_(&rs), rank_(rs.rank()) {
    int r = rank_;
    // e_{ij} on the simple basis: diagonal forced by eps(a,a) = -1, lower
    // triangle free (taken 0), upper triangle forced by the asymmetry law
    bits_.assign(r * r, 0);
    for (int i = 0; i < r; ++i) bits_[i * r + i] = 1;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            bits_[i * r + j] = std::uint8_t(((rs.cartan().get(i, j) % 2) + 2) % 2);

    root_simple2_.resize(rs.size());
    sigma_.resize(rs.size());
    for (std::size_t a = 0; a < rs.size(); ++a) {
        const auto& sc = rs.simple_coords(a);
        root_simple2_[a].resize(r);
        for (int k = 0; k < r; ++k)
            root_simple2_[a][k] = std::uint8_t(((sc[k] % 2) + 2) % 2);
        sigma_[a] = rs.is_positive(a) ? 1 : -1;
    }
}

int Cocycle::f2(const std::vector<std::uint8_t>& m, const std::vector<std::uint8_t>& n) const {
    unsigned acc = 0;
    for (int i = 0; i < rank_; ++i) {
        if (!m[i]) continue;
        for (int k = 0; k < rank_; ++k) acc ^= bits_[i * rank_ + k] & n[k];
    }
    return acc & 1 ? -1 : 1;
}

int Cocycle::eps_roots(std::size_t a, std::size_t b) const {
    return f2(root_simple2_[a], root_simple2_[b]);
}

int Cocycle::eps_root_q(std::size_t a, const std::vector<int>& qcoords) const {
    std::vector<std::uint8_t> n(rank_);
    for (int k = 0; k < rank_; ++k) n[k] = std::uint8_t(((qcoords[k] % 2) + 2) % 2);
    return f2(root_simple2_[a], n);
}

int Cocycle::constant_sign(std::size_t a, std::size_t b) const {
    auto s = rs_->sum_index(a, b);
    if (!s) throw std::invalid_argument("constant_sign: a + b is not a root");
    return sigma_[a] * sigma_[b] * sigma_[*s] * eps_roots(a, b);
}

int Cocycle::module_sign(std::size_t a, const std::vector<int>& qcoords) const {
    return sigma_[a] * eps_root_q(a, qcoords);
}

// --- Lie algebra -------------------------------------------------------------

ChevalleyAlgebra ChevalleyAlgebra::build(std::shared_ptr<const RootSystem> rs,
                                         const CharacterLattice& lattice, FieldSpec fs) {
    ChevalleyAlgebra alg{Field(fs)};
    alg.rs_ = std::move(rs);
    const RootSystem& R = *alg.rs_;
    int r = R.rank();
    alg.tag_ = lattice.tag;
    alg.xb_ = lattice.basis;
    alg.cc_ = std::make_shared<Cocycle>(R);

    // Y = dual of X (doubled): Y_d = 4 * (X_d^T)^{-1}, rows are the y_k
    IntMatrix xt = alg.xb_.transpose();
    bigint d0 = det(xt);
    if (d0 == 0) throw std::invalid_argument("ChevalleyAlgebra: degenerate lattice basis");
    IntMatrix adj = adjugate(xt);
    alg.yb_ = IntMatrix(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            bigint num = 4 * adj.get(i, j);
            if (num % d0 != 0) throw std::logic_error("ChevalleyAlgebra: dual basis not half-integral");
            alg.yb_.set(i, j, num / d0);
        }

    // h_alpha in y-coordinates (coroot = root, simply laced); must be integral
    IntMatrix yt = alg.yb_.transpose();
    bigint yd = det(yt);
    IntMatrix yadj = adjugate(yt);
    alg.coroot_y_.resize(R.size());
    alg.pair_y_root_.resize(R.size());
    for (std::size_t a = 0; a < R.size(); ++a) {
        const RootVec& v = R.root(a);
        alg.coroot_y_[a].resize(r);
        alg.pair_y_root_[a].resize(r);
        for (int k = 0; k < r; ++k) {
            bigint num = 0;
            for (int j = 0; j < r; ++j) num += yadj.get(k, j) * v.d[j];
            if (num % yd != 0)
                throw std::logic_error("ChevalleyAlgebra: coroot outside the cocharacter lattice");
            alg.coroot_y_[a][k] = (num / yd).convert_to<int>();
            bigint dot = 0;
            for (int j = 0; j < r; ++j) dot += bigint(v.d[j]) * alg.yb_.get(k, j);
            if (dot % 4 != 0) throw std::logic_error("ChevalleyAlgebra: root/cocharacter pairing");
            alg.pair_y_root_[a][k] = (dot / 4).convert_to<int>();
        }
    }

    if (alg.f_.p() == 2) {
        // (y_k|y_l) can be half-integral for some lattices (half-spin D_r with
        // r not divisible by 4); the symplectic form is then simply unavailable
        alg.symp_.assign(r, std::vector<int>(r, 0));
        for (int k = 0; k < r && !alg.symp_.empty(); ++k)
            for (int l = 0; l < r; ++l) {
                bigint dot = 0;
                for (int j = 0; j < r; ++j) dot += alg.yb_.get(k, j) * alg.yb_.get(l, j);
                if (dot % 4 != 0) {
                    alg.symp_.clear();
                    break;
                }
                bigint m = (dot / 4) % 2;
                alg.symp_[k][l] = int(m < 0 ? m + 2 : m);
            }
    }
    return alg;
}

ChevalleyAlgebra::Element ChevalleyAlgebra::basis_element(std::size_t i) const {
    Element e = zero();
    e[i] = 1;
    return e;
}

ChevalleyAlgebra::Element ChevalleyAlgebra::coroot(std::size_t root) const {
    Element e = zero();
    for (int k = 0; k < rank(); ++k) e[k] = f_.from_int(coroot_y_[root][k]);
    return e;
}

long long ChevalleyAlgebra::weight_pairing(const RootVec& lambda, int k) const {
    long long dot = 0;
    for (int j = 0; j < rank(); ++j)
        dot += (long long)lambda.d[j] * yb_.get(k, j).convert_to<long long>();
    if (dot % 4 != 0) throw std::domain_error("weight_pairing: weight not in X");
    return dot / 4;
}

ChevalleyAlgebra::Element ChevalleyAlgebra::bracket(const Element& x, const Element& y) const {
    const RootSystem& R = *rs_;
    int r = rank();
    std::size_t n = R.size();
    Element out = zero();

    // torus . root terms: [t, e_b] = (b|t) e_b
    for (std::size_t b = 0; b < n; ++b) {
        fe xb = x[r + b], yb = y[r + b];
        if (!xb && !yb) continue;
        fe sx = 0, sy = 0;
        for (int k = 0; k < r; ++k) {
            fe c = f_.from_int(pair_y_root_[b][k]);
            if (!c) continue;
            if (x[k]) sx = f_.add(sx, f_.mul(x[k], c));
            if (y[k]) sy = f_.add(sy, f_.mul(y[k], c));
        }
        if (yb && sx) out[r + b] = f_.add(out[r + b], f_.mul(sx, yb));
        if (xb && sy) out[r + b] = f_.sub(out[r + b], f_.mul(sy, xb));
    }

    // root . root terms
    for (std::size_t a = 0; a < n; ++a) {
        fe xa = x[r + a];
        if (!xa) continue;
        for (std::size_t b = 0; b < n; ++b) {
            fe yb = y[r + b];
            if (!yb) continue;
            fe c = f_.mul(xa, yb);
            if (b == R.neg_index(a)) {
                // [e_a, e_{-a}] = h_a
                for (int k = 0; k < r; ++k)
                    out[k] = f_.add(out[k], f_.mul(c, f_.from_int(coroot_y_[a][k])));
            } else if (auto s = R.sum_index(a, b)) {
                int sign = cc_->constant_sign(a, b);
                fe t = sign == 1 ? c : f_.neg(c);
                out[r + *s] = f_.add(out[r + *s], t);
            }
        }
    }
    return out;
}

ChevalleyAlgebra::Element ChevalleyAlgebra::p_power(const Element& x) const {
    if (f_.p() != 2) throw std::domain_error("p_power: implemented for p = 2 only");
    std::size_t d = dim();
    Element out = zero();
    // basis [2]-powers: y_k^[2] = y_k, e_a^[2] = 0
    for (int k = 0; k < rank(); ++k) out[k] = f_.mul(x[k], x[k]);
    // Jacobson cross terms sum_{i<j} [x_i b_i, x_j b_j]
    std::vector<std::size_t> nz;
    for (std::size_t i = 0; i < d; ++i)
        if (x[i]) nz.push_back(i);
    for (std::size_t u = 0; u < nz.size(); ++u)
        for (std::size_t v = u + 1; v < nz.size(); ++v) {
            Element br = bracket(basis_element(nz[u]), basis_element(nz[v]));
            fe c = f_.mul(x[nz[u]], x[nz[v]]);
            for (std::size_t i = 0; i < d; ++i)
                if (br[i]) out[i] = f_.add(out[i], f_.mul(c, br[i]));
        }
    return out;
}

FieldMatrix ChevalleyAlgebra::ad_matrix(const Element& x) const {
    std::size_t d = dim();
    FieldMatrix m(f_, d, d);
    for (std::size_t j = 0; j < d; ++j) {
        Element col = bracket(x, basis_element(j));
        for (std::size_t i = 0; i < d; ++i)
            if (col[i]) m.set(i, j, col[i]);
    }
    return m;
}

fe ChevalleyAlgebra::symplectic_form(const Element& t1, const Element& t2) const {
    if (f_.p() != 2) throw std::domain_error("symplectic_form: p = 2 only");
    if (symp_.empty())
        throw std::domain_error("symplectic_form: (y_k|y_l) non-integral for this lattice");
    fe acc = 0;
    for (int k = 0; k < rank(); ++k) {
        if (!t1[k]) continue;
        for (int l = 0; l < rank(); ++l)
            if (t2[l] && symp_[k][l]) acc = f_.add(acc, f_.mul(t1[k], t2[l]));
    }
    return acc;
}

FieldMatrix ChevalleyAlgebra::center() const {
    std::size_t d = dim();
    FieldMatrix stacked(f_, d * d, d);
    for (std::size_t b = 0; b < d; ++b) {
        FieldMatrix ad = ad_matrix(basis_element(b));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (fe v = ad.get(i, j)) stacked.set(b * d + i, j, v);
    }
    return kernel_basis(stacked);
}

// --- serialization -----------------------------------------------------------

nlohmann::json rootsystem_to_json(const RootSystem& rs) {
    nlohmann::json j;
    j["type"] = rs.type() == RSType::D ? "D" : "E8";
    j["rank"] = rs.rank();
    nlohmann::json roots = nlohmann::json::array();
    for (const auto& v : rs.roots()) roots.push_back(v.d);
    j["roots_doubled"] = std::move(roots);
    nlohmann::json cart = nlohmann::json::array();
    for (int i = 0; i < rs.rank(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < rs.rank(); ++k) row.push_back(rs.cartan().get(i, k).convert_to<int>());
        cart.push_back(std::move(row));
    }
    j["cartan"] = std::move(cart);
    return j;
}

nlohmann::json algebra_to_json(const ChevalleyAlgebra& alg) {
    const RootSystem& rs = alg.roots();
    nlohmann::json j;
    j["root_system"] = rootsystem_to_json(rs);
    j["lattice"] = lattice_name(alg.lattice_tag());
    j["field"] = alg.field().name();
    j["dim"] = alg.dim();
    nlohmann::json consts = nlohmann::json::array();
    for (std::size_t a = 0; a < rs.size(); ++a)
        for (std::size_t b = 0; b < rs.size(); ++b)
            if (rs.sum_index(a, b))
                consts.push_back({a, b, alg.cocycle().constant_sign(a, b)});
    j["structure_constants"] = std::move(consts);
    nlohmann::json coroots = nlohmann::json::array();
    for (std::size_t a = 0; a < rs.size(); ++a) coroots.push_back(alg.coroot_coords(a));
    j["coroots_y"] = std::move(coroots);
    return j;
}

}  // namespace spinlie
