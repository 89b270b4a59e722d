#include "spinlie/premet.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "spinlie/stab.hpp"

namespace spinlie {

namespace {

IntMatrix kron(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out.set(i * b.rows() + k, j * b.cols() + l, a.get(i, j) * b.get(k, l));
    return out;
}

IntMatrix hadamard8() {
    IntMatrix h2(2, 2);
    h2.set(0, 0, 1);
    h2.set(0, 1, 1);
    h2.set(1, 0, 1);
    h2.set(1, 1, -1);
    return kron(h2, kron(h2, h2));
}

// rank of the row span; rows given as coordinate vectors
std::size_t span_rank(const Field& f, const std::vector<std::vector<fe>>& rows) {
    if (rows.empty()) return 0;
    FieldMatrix m(f, rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            if (rows[r][c]) m.set(r, c, rows[r][c]);
    return rank(m);
}

bool same_span(const Field& f, const std::vector<std::vector<fe>>& a,
               const std::vector<std::vector<fe>>& b) {
    std::vector<std::vector<fe>> both = a;
    both.insert(both.end(), b.begin(), b.end());
    std::size_t ra = span_rank(f, a), rb = span_rank(f, b);
    return ra == rb && ra == span_rank(f, both);
}

std::vector<std::vector<fe>> matrix_rows(const FieldMatrix& m) {
    std::vector<std::vector<fe>> rows(m.rows(), std::vector<fe>(m.cols(), 0));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m.get(r, c);
    return rows;
}

}  // namespace

GammaSystem GammaSystem::build(FieldSpec fs) {
    if (fs.p != 2) throw std::invalid_argument("GammaSystem: characteristic 2 only");
    GammaSystem gs;
    gs.rep = e8_restriction_halfspin(fs);
    gs.alg = gs.rep.algebra_ptr();
    const RootSystem& R = gs.alg->roots();

    gs.h8 = hadamard8();
    // H8 H8^T = 8 I
    IntMatrix prod = gs.h8.mul(gs.h8.transpose());
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            if (prod.get(i, j) != (i == j ? 8 : 0))
                throw std::logic_error("GammaSystem: Hadamard identity failed");

    for (int i = 0; i < 8; ++i) {
        RootVec g;
        g.d.resize(8);
        for (int j = 0; j < 8; ++j) g.d[j] = int(gs.h8.get(i, j));
        auto idx = R.index_of(g);
        if (!idx) throw std::logic_error("GammaSystem: Hadamard row is not a root");
        if (g.d[0] % 2 == 0) throw std::logic_error("GammaSystem: gamma not half-integer");
        gs.gamma.push_back(*idx);
        gs.gamma_neg.push_back(R.neg_index(*idx));
    }
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            long long ip = pair_ip(R.root(gs.gamma[i]), R.root(gs.gamma[j]));
            if (ip != (i == j ? 2 : 0))
                throw std::logic_error("GammaSystem: gamma pairings wrong");
            if (i != j) {
                // +-gamma_i +- gamma_j is never a root
                for (std::size_t a : {gs.gamma[i], gs.gamma_neg[i]})
                    for (std::size_t b : {gs.gamma[j], gs.gamma_neg[j]})
                        if (R.sum_index(a, b))
                            throw std::logic_error("GammaSystem: gamma_i + gamma_j is a root");
            }
        }

    gs.m = IntMatrix(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            gs.m.set(i, j, pair_ip(R.root(gs.gamma[i]), R.root(R.simple(j))));
    gs.m_divisors = smith_normal_form(gs.m).divisors;

    for (std::size_t i = 0; i < gs.rep.dim(); ++i) gs.vpos[gs.rep.weights()[i].d] = i;
    return gs;
}

std::vector<ChevalleyAlgebra::Element> t0_basis(const GammaSystem& gs) {
    const ChevalleyAlgebra& alg = *gs.alg;
    const Field& f = alg.field();
    std::vector<ChevalleyAlgebra::Element> h;
    std::vector<std::vector<fe>> coords;  // torus coordinates of each h_gamma
    for (std::size_t g : gs.gamma) {
        h.push_back(alg.coroot(g));
        coords.push_back(std::vector<fe>(h.back().begin(), h.back().begin() + 8));
    }
    if (span_rank(f, coords) != 4)
        throw std::logic_error("t0_basis: span of the h_gamma is not 4-dimensional");

    // greedy basis
    std::vector<ChevalleyAlgebra::Element> basis;
    std::vector<std::vector<fe>> bcoords;
    for (std::size_t i = 0; i < 8 && basis.size() < 4; ++i) {
        bcoords.push_back(coords[i]);
        if (span_rank(f, bcoords) == bcoords.size()) basis.push_back(h[i]);
        else bcoords.pop_back();
    }

    // total isotropy of the span (bilinear, so basis pairs suffice; we check
    // all 8x8 pairs anyway)
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            if (alg.symplectic_form(h[i], h[j]) != 0)
                throw std::logic_error("t0_basis: span is not isotropic");

    // maximality: the perp of t0 in the torus is t0 itself
    FieldMatrix pairings(f, 4, 8);
    for (std::size_t b = 0; b < 4; ++b)
        for (int k = 0; k < 8; ++k)
            pairings.set(b, k, alg.symplectic_form(basis[b], alg.basis_element(k)));
    FieldMatrix perp = kernel_basis(pairings);
    if (!same_span(f, matrix_rows(perp), bcoords))
        throw std::logic_error("t0_basis: span is not maximal isotropic");

    // torality: h^[2] = h for every h_gamma
    for (const auto& u : h)
        if (alg.p_power(u) != u) throw std::logic_error("t0_basis: h_gamma is not idempotent");

    return basis;
}

bool in_r_circ(const GammaSystem& gs, const RCircElement& x) {
    const Field& f = gs.alg->field();
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            if (f.mul(x.lambda[i], x.mu[i]) == f.mul(x.lambda[j], x.mu[j])) return false;
    ChevalleyAlgebra::Element y = r_to_algebra(gs, x);
    std::vector<std::vector<fe>> tower;
    for (int k = 1; k <= 4; ++k) {
        y = gs.alg->p_power(y);
        tower.push_back(std::vector<fe>(y.begin(), y.begin() + 8));
    }
    return span_rank(f, tower) == 4;
}

RCircElement sample_r_circ(const GammaSystem& gs, std::uint64_t seed) {
    const Field& f = gs.alg->field();
    if (f.order() < 16)
        throw std::invalid_argument("sample_r_circ: need at least 16 field elements");
    for (std::uint64_t trial = 0;; ++trial) {
        if (trial > 4096) throw std::runtime_error("sample_r_circ: rejection limit hit");
        Xoshiro256ss rng = Xoshiro256ss::for_trial(seed, trial);
        RCircElement x;
        for (int i = 0; i < 8; ++i) {
            x.lambda[i] = fe(1 + rng.uniform(f.order() - 1));
            x.mu[i] = fe(1 + rng.uniform(f.order() - 1));
        }
        if (in_r_circ(gs, x)) return x;
    }
}

std::vector<fe> r_to_module(const GammaSystem& gs, const RCircElement& x) {
    const RootSystem& R = gs.alg->roots();
    std::vector<fe> v(gs.rep.dim(), 0);
    for (int i = 0; i < 8; ++i) {
        v[gs.vpos.at(R.root(gs.gamma[i]).d)] = x.lambda[i];
        v[gs.vpos.at(R.root(gs.gamma_neg[i]).d)] = x.mu[i];
    }
    return v;
}

ChevalleyAlgebra::Element r_to_algebra(const GammaSystem& gs, const RCircElement& x) {
    ChevalleyAlgebra::Element y = gs.alg->zero();
    for (int i = 0; i < 8; ++i) {
        y[gs.alg->root_index(gs.gamma[i])] = x.lambda[i];
        y[gs.alg->root_index(gs.gamma_neg[i])] = x.mu[i];
    }
    return y;
}

ChevalleyAlgebra::Element two_power_tower(const GammaSystem& gs, const RCircElement& x, int k) {
    if (k < 1) throw std::invalid_argument("two_power_tower: k >= 1");
    const Field& f = gs.alg->field();
    ChevalleyAlgebra::Element out = gs.alg->zero();
    for (int i = 0; i < 8; ++i) {
        fe c = f.mul(x.lambda[i], x.mu[i]);
        for (int s = 1; s < k; ++s) c = f.mul(c, c);  // c^{2^{k-1}}
        ChevalleyAlgebra::Element h = gs.alg->coroot(gs.gamma[i]);
        for (std::size_t j = 0; j < out.size(); ++j)
            out[j] = f.add(out[j], f.mul(c, h[j]));
    }
    return out;
}

bool check_tower_identity(const GammaSystem& gs, const RCircElement& x, int kmax) {
    ChevalleyAlgebra::Element y = r_to_algebra(gs, x);
    for (int k = 1; k <= kmax; ++k) {
        y = gs.alg->p_power(y);
        if (y != two_power_tower(gs, x, k)) return false;
    }
    return true;
}

CentralizerResult centralizer_of_t0(const GammaSystem& gs) {
    const ChevalleyAlgebra& alg = *gs.alg;
    const Field& f = alg.field();
    auto t0 = t0_basis(gs);
    std::size_t n = alg.dim();

    // inside the full algebra: kernel of y -> ([t_1,y], ..., [t_4,y])
    FieldMatrix stacked(f, 4 * n, n);
    for (std::size_t b = 0; b < 4; ++b) {
        FieldMatrix ad = alg.ad_matrix(t0[b]);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (ad.get(r, c)) stacked.set(b * n + r, c, ad.get(r, c));
    }
    FieldMatrix ker_full = kernel_basis(stacked);

    CentralizerResult res;
    res.dim_full = ker_full.rows();

    // predicted: torus + e_{+-gamma_i}
    std::vector<std::vector<fe>> predicted;
    for (int k = 0; k < 8; ++k) {
        std::vector<fe> v(n, 0);
        v[k] = 1;
        predicted.push_back(std::move(v));
    }
    for (int i = 0; i < 8; ++i)
        for (std::size_t g : {gs.gamma[i], gs.gamma_neg[i]}) {
            std::vector<fe> v(n, 0);
            v[alg.root_index(g)] = 1;
            predicted.push_back(std::move(v));
        }
    bool full_ok = same_span(f, matrix_rows(ker_full), predicted);

    // inside the D_8 subalgebra: generator-coordinate kernel
    std::size_t ng = gs.rep.n_generators();
    FieldMatrix stacked_d8(f, 4 * n, ng);
    for (std::size_t b = 0; b < 4; ++b)
        for (std::size_t g = 0; g < ng; ++g) {
            auto br = alg.bracket(t0[b], gs.rep.generator(g));
            for (std::size_t r = 0; r < n; ++r)
                if (br[r]) stacked_d8.set(b * n + r, g, br[r]);
        }
    FieldMatrix ker_d8 = kernel_basis(stacked_d8);
    res.dim_d8 = ker_d8.rows();
    std::vector<std::vector<fe>> torus_gens;
    for (int k = 0; k < 8; ++k) {
        std::vector<fe> v(ng, 0);
        v[k] = 1;
        torus_gens.push_back(std::move(v));
    }
    res.spans_match = full_ok && same_span(f, matrix_rows(ker_d8), torus_gens);
    return res;
}

FieldMatrix infinitesimal_stab(const GammaSystem& gs, const RCircElement& x) {
    const Field& f = gs.alg->field();
    FieldMatrix ker = kernel_basis(action_matrix(gs.rep, r_to_module(gs, x)));
    if (ker.rows() != 4)
        throw std::logic_error("infinitesimal_stab: stabilizer dimension is not 4");

    // compare with t0 in generator coordinates (torus slots 0..7)
    auto t0 = t0_basis(gs);
    std::vector<std::vector<fe>> t0rows;
    for (const auto& t : t0) {
        std::vector<fe> v(gs.rep.n_generators(), 0);
        for (int k = 0; k < 8; ++k) v[k] = t[k];
        t0rows.push_back(std::move(v));
    }
    if (!same_span(f, matrix_rows(ker), t0rows))
        throw std::logic_error("infinitesimal_stab: stabilizer differs from t0");

    // toral: u^[2] stays in the span
    for (std::size_t r = 0; r < ker.rows(); ++r) {
        ChevalleyAlgebra::Element y = gs.alg->zero();
        for (std::size_t g = 0; g < ker.cols(); ++g)
            if (ker.get(r, g))
                for (std::size_t j = 0; j < y.size(); ++j)
                    y[j] = f.add(y[j], f.mul(ker.get(r, g), gs.rep.generator(g)[j]));
        auto sq = gs.alg->p_power(y);
        std::vector<fe> v(gs.rep.n_generators(), 0);
        for (int k = 0; k < 8; ++k) v[k] = sq[k];
        for (std::size_t j = 8; j < sq.size(); ++j)
            if (sq[j]) throw std::logic_error("infinitesimal_stab: 2-power left the torus");
        auto rows = t0rows;
        rows.push_back(v);
        if (span_rank(f, rows) != 4)
            throw std::logic_error("infinitesimal_stab: stabilizer is not toral");
    }
    return ker;
}

// --- monomial elements ---------------------------------------------------------

bool MonomialElement::is_identity() const {
    if (!w.is_identity()) return false;
    for (fe v : t)
        if (v != 1) return false;
    return true;
}

fe character_value(const GammaSystem& gs, const std::array<fe, 8>& t, const RootVec& beta) {
    const Field& f = gs.alg->field();
    const RootSystem& R = gs.alg->roots();
    fe acc = 1;
    for (int j = 0; j < 8; ++j) {
        long long e = pair_ip(beta, R.root(gs.gamma[j]));
        fe base = e >= 0 ? t[j] : f.inv(t[j]);
        for (long long s = 0; s < (e >= 0 ? e : -e); ++s) acc = f.mul(acc, base);
    }
    return f.sqrt(acc);
}

std::vector<fe> apply_monomial(const GammaSystem& gs, const MonomialElement& m,
                               const std::vector<fe>& v) {
    const Field& f = gs.alg->field();
    std::vector<fe> out(v.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i]) continue;
        const RootVec& beta = gs.rep.weights()[i];
        std::size_t tgt = gs.vpos.at(m.w.apply(beta).d);
        out[tgt] = f.add(out[tgt], f.mul(character_value(gs, m.t, beta), v[i]));
    }
    return out;
}

MonomialElement compose(const GammaSystem& gs, const MonomialElement& a,
                        const MonomialElement& b) {
    const Field& f = gs.alg->field();
    const RootSystem& R = gs.alg->roots();
    MonomialElement out;
    out.w = a.w.compose(b.w);
    for (int i = 0; i < 8; ++i)
        out.t[i] = f.mul(character_value(gs, a.t, b.w.apply(R.root(gs.gamma[i]))), b.t[i]);
    return out;
}

MonomialElement n0_element(const GammaSystem& gs, const RCircElement& x) {
    const Field& f = gs.alg->field();
    MonomialElement m;
    m.w = SignedPerm::identity(8);
    for (int i = 0; i < 8; ++i) m.w.sign[i] = -1;
    for (int i = 0; i < 8; ++i) m.t[i] = f.div(x.mu[i], x.lambda[i]);
    return m;
}

namespace {

bool monomial_less(const MonomialElement& a, const MonomialElement& b) {
    if (a.w.perm != b.w.perm) return a.w.perm < b.w.perm;
    if (a.w.sign != b.w.sign) return a.w.sign < b.w.sign;
    return a.t < b.t;
}

}  // namespace

std::vector<MonomialElement> group_stab_enum(const GammaSystem& gs, const RCircElement& x) {
    const Field& f = gs.alg->field();
    const RootSystem& R = gs.alg->roots();
    for (int i = 0; i < 8; ++i)
        if (!x.lambda[i] || !x.mu[i])
            throw std::invalid_argument("group_stab_enum: zero coefficient");

    // +-Gamma lookup: doubled coords -> (index, sign)
    std::map<std::vector<int>, std::pair<int, int>> glook;
    for (int i = 0; i < 8; ++i) {
        glook[R.root(gs.gamma[i]).d] = {i, +1};
        glook[R.root(gs.gamma_neg[i]).d] = {i, -1};
    }
    std::vector<RootVec> grow;
    for (int i = 0; i < 8; ++i) grow.push_back(R.root(gs.gamma[i]));
    std::vector<fe> prod(8);
    for (int i = 0; i < 8; ++i) prod[i] = f.mul(x.lambda[i], x.mu[i]);

    std::vector<MonomialElement> found;
    std::vector<int> perm(8);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        // a signed permutation with this epsilon-permutation can preserve
        // +-Gamma only if every column-permuted Hadamard row is again +-(a row)
        bool ok = true;
        for (int i = 1; i < 8 && ok; ++i) {
            std::vector<int> q(8);
            for (int c = 0; c < 8; ++c) q[perm[c]] = grow[i].d[c];
            if (!glook.count(q)) ok = false;
        }
        if (!ok) continue;

        for (int k = 0; k < 8; ++k)
            for (int eps : {1, -1}) {
                SignedPerm w;
                w.perm = perm;
                w.sign.resize(8);
                for (int c = 0; c < 8; ++c) w.sign[c] = eps * int(gs.h8.get(k, perm[c]));
                // image map and torus solve
                MonomialElement cand;
                cand.w = w;
                bool good = true;
                for (int i = 0; i < 8 && good; ++i) {
                    auto it = glook.find(w.apply(grow[i]).d);
                    if (it == glook.end()) { good = false; break; }
                    auto [j, sgn] = it->second;
                    fe ti;
                    if (sgn > 0) {
                        ti = f.div(x.lambda[j], x.lambda[i]);
                        if (f.div(x.mu[i], ti) != x.mu[j]) good = false;
                    } else {
                        ti = f.div(x.mu[j], x.lambda[i]);
                        if (f.div(x.mu[i], ti) != x.lambda[j]) good = false;
                    }
                    cand.t[i] = ti;
                }
                if (!good) continue;
                // independent re-check through the character/sqrt machinery
                if (apply_monomial(gs, cand, r_to_module(gs, x)) != r_to_module(gs, x))
                    throw std::logic_error("group_stab_enum: torus solve inconsistent");
                found.push_back(std::move(cand));
            }
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::sort(found.begin(), found.end(), monomial_less);

    // postconditions: order 16, exponent 2, closure, the named generators
    if (found.size() != 16) throw std::logic_error("group_stab_enum: order is not 16");
    auto member = [&](const MonomialElement& m) {
        return std::binary_search(found.begin(), found.end(), m, monomial_less);
    };
    for (const auto& a : found) {
        if (!compose(gs, a, a).is_identity())
            throw std::logic_error("group_stab_enum: element of order > 2");
        for (const auto& b : found)
            if (!member(compose(gs, a, b)))
                throw std::logic_error("group_stab_enum: not closed under composition");
        // w never moves gamma_i off the +-gamma_i axis
        for (int i = 0; i < 8; ++i) {
            auto [j, sgn] = glook.at(a.w.apply(grow[i]).d);
            if (j != i) throw std::logic_error("group_stab_enum: gamma_i moved to gamma_j");
        }
    }
    if (!member(n0_element(gs, x)))
        throw std::logic_error("group_stab_enum: n0 is missing");
    const int sigmas[3][8] = {{4, 5, 6, 7, 0, 1, 2, 3},
                              {3, 2, 1, 0, 7, 6, 5, 4},
                              {1, 0, 3, 2, 5, 4, 7, 6}};
    for (auto& s : sigmas) {
        int lifts = 0;
        for (const auto& m : found) {
            bool plain = m.w.perm == std::vector<int>(s, s + 8);
            for (int c = 0; c < 8 && plain; ++c) plain = m.w.sign[c] == 1;
            if (plain) ++lifts;
        }
        if (lifts != 1) throw std::logic_error("group_stab_enum: sigma lift not unique");
    }
    return found;
}

MonomialElement conjugate_witness(const GammaSystem& gs, const RCircElement& x,
                                  const RCircElement& xp) {
    return conjugate_witness(gs, x, xp, group_stab_enum(gs, x), group_stab_enum(gs, xp));
}

MonomialElement conjugate_witness(const GammaSystem& gs, const RCircElement& x,
                                  const RCircElement& xp,
                                  const std::vector<MonomialElement>& stab_x,
                                  const std::vector<MonomialElement>& stab_xp) {
    const Field& f = gs.alg->field();
    MonomialElement h, hinv;
    h.w = SignedPerm::identity(8);
    hinv.w = SignedPerm::identity(8);
    for (int i = 0; i < 8; ++i) {
        fe b2 = f.div(f.mul(x.lambda[i], xp.mu[i]), f.mul(xp.lambda[i], x.mu[i]));
        h.t[i] = f.sqrt(b2);
        hinv.t[i] = f.inv(h.t[i]);
    }
    auto xpv = r_to_module(gs, xp);
    auto in_xp = [&](const MonomialElement& m) {
        return std::binary_search(stab_xp.begin(), stab_xp.end(), m, monomial_less);
    };
    // in the "scale by beta(h), then permute" model the witness acts on the
    // stabilizer by m -> h^{-1} m h
    for (const auto& m : stab_x) {
        MonomialElement c = compose(gs, compose(gs, hinv, m), h);
        if (apply_monomial(gs, c, xpv) != xpv || !in_xp(c))
            throw std::logic_error("conjugate_witness: conjugation check failed");
    }
    return h;
}

SnfResult mu2_part(const GammaSystem& gs) {
    const RootSystem& R = gs.alg->roots();
    IntMatrix c(8, 8);
    for (int i = 0; i < 8; ++i) {
        auto coords = R.root_coords(R.root(gs.gamma[i]));
        for (int j = 0; j < 8; ++j) c.set(i, j, coords[j]);
    }
    SnfResult snf = smith_normal_form(c);
    for (const auto& d : snf.divisors)
        if (d == 0) throw std::logic_error("mu2_part: Gamma does not span");
    return snf;
}

nlohmann::json gamma_system_to_json(const GammaSystem& gs) {
    const RootSystem& R = gs.alg->roots();
    nlohmann::json h8 = nlohmann::json::array(), m = nlohmann::json::array(),
                   gammas = nlohmann::json::array();
    for (int i = 0; i < 8; ++i) {
        nlohmann::json hrow = nlohmann::json::array(), mrow = nlohmann::json::array();
        for (int j = 0; j < 8; ++j) {
            hrow.push_back(int(gs.h8.get(i, j)));
            mrow.push_back(int(gs.m.get(i, j)));
        }
        h8.push_back(hrow);
        m.push_back(mrow);
        gammas.push_back(R.root(gs.gamma[i]).d);
    }
    nlohmann::json divisors = nlohmann::json::array();
    for (const auto& d : gs.m_divisors) divisors.push_back(int(d));
    return nlohmann::json{{"h8", h8},
                          {"gamma_doubled", gammas},
                          {"m", m},
                          {"m_snf_divisors", divisors},
                          {"field", gs.alg->field().name()}};
}

}  // namespace spinlie
