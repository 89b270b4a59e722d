#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <vector>

#include "spinlie/premet.hpp"

using namespace spinlie;

namespace {

const GammaSystem& gs32() {
    static GammaSystem gs = GammaSystem::build(FieldSpec::gf2ext(5));
    return gs;
}

// plain row-reduction over GF(2) on an explicit 0/1 array, independent of the
// packed elimination in FieldMatrix
std::size_t naive_gf2_rank(std::vector<std::vector<int>> m) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m[0].size() && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (i != r && m[i][c])
                for (std::size_t j = 0; j < m[0].size(); ++j) m[i][j] ^= m[r][j];
        ++r;
    }
    return r;
}

}  // namespace

TEST_CASE("the Hadamard roots gamma_1..gamma_8") {
    const GammaSystem& gs = gs32();
    const RootSystem& R = gs.alg->roots();
    CHECK(gs.gamma.size() == 8);
    // first row of H_8 is all ones, so gamma_1 = (eps_1 + ... + eps_8)/2
    for (int j = 0; j < 8; ++j) CHECK(R.root(gs.gamma[0]).d[j] == 1);
    for (int i = 0; i < 8; ++i) {
        CHECK(R.root(gs.gamma[i]).d[0] % 2 != 0);  // half-integer part of E8
        CHECK(pair_ip(R.root(gs.gamma[i]), R.root(gs.gamma[i])) == 2);
        for (int j = i + 1; j < 8; ++j)
            CHECK(pair_ip(R.root(gs.gamma[i]), R.root(gs.gamma[j])) == 0);
    }
}

TEST_CASE("the pairing matrix M = [(gamma_i | alpha_j)]") {
    const GammaSystem& gs = gs32();
    const int expected[8][8] = {
        {-1, 1, 0, 0, 0, 0, 0, 0},
        {0, 0, -1, 1, -1, 1, -1, 1},
        {0, 1, 0, -1, 0, 1, 0, -1},
        {1, 0, -1, 0, 1, 0, -1, 0},
        {0, 1, 0, 0, 0, -1, 0, 0},
        {1, 0, -1, 1, -1, 0, 1, -1},
        {1, 1, 0, -1, 0, 0, 0, 1},
        {0, 0, -1, 0, 1, -1, 1, 0},
    };
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            CAPTURE(i);
            CAPTURE(j);
            CHECK(gs.m.get(i, j) == expected[i][j]);
        }

    SUBCASE("elementary divisors 1,1,1,1,2,2,2,2") {
        REQUIRE(gs.m_divisors.size() == 8);
        for (int i = 0; i < 4; ++i) CHECK(gs.m_divisors[i] == 1);
        for (int i = 4; i < 8; ++i) CHECK(gs.m_divisors[i] == 2);
    }

    SUBCASE("rank of M mod 2, checked against a naive elimination") {
        std::vector<std::vector<int>> bits(8, std::vector<int>(8));
        Field f2(FieldSpec::prime(2));
        FieldMatrix m2(f2, 8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                bits[i][j] = int(gs.m.get(i, j) & 1);
                m2.set(i, j, fe(bits[i][j]));
            }
        CHECK(naive_gf2_rank(bits) == 4);
        CHECK(rank(m2) == 4);
    }
}

TEST_CASE("Z.Gamma inside the root lattice: index 16, divisors 1^4 2^4") {
    auto snf = mu2_part(gs32());
    REQUIRE(snf.divisors.size() == 8);
    bigint index = 1;
    for (int i = 0; i < 8; ++i) {
        CHECK(snf.divisors[i] == (i < 4 ? 1 : 2));
        index *= snf.divisors[i];
    }
    CHECK(index == 16);
}

TEST_CASE("t0 is a 4-dimensional maximal totally isotropic toral subalgebra") {
    const GammaSystem& gs = gs32();
    auto t0 = t0_basis(gs);  // throws if any of the checks fail
    REQUIRE(t0.size() == 4);
    for (const auto& t : t0) {
        for (std::size_t j = 8; j < t.size(); ++j) CHECK(t[j] == 0);  // torus part only
        CHECK(gs.alg->p_power(t) == t);
    }
}

TEST_CASE("centralizer of t0: dimension 24 in E8, dimension 8 in the D_8 part") {
    auto c = centralizer_of_t0(gs32());
    CHECK(c.dim_full == 24);
    CHECK(c.dim_d8 == 8);
    CHECK(c.spans_match);
}

TEST_CASE("the open set r-circ and the 2-power tower") {
    const GammaSystem& gs = gs32();
    RCircElement x = sample_r_circ(gs, 2024);
    CHECK(in_r_circ(gs, x));

    SUBCASE("the closed form of x^{[2]^k} for k up to 8") {
        CHECK(check_tower_identity(gs, x, 8));
        // each tower element lies in the torus
        for (int k = 1; k <= 8; ++k) {
            auto y = two_power_tower(gs, x, k);
            for (std::size_t j = 8; j < y.size(); ++j) CHECK(y[j] == 0);
        }
    }

    SUBCASE("equal products are excluded") {
        RCircElement bad;
        bad.lambda.fill(1);
        bad.mu.fill(1);
        CHECK(!in_r_circ(gs, bad));
    }

    SUBCASE("sampling is deterministic in the seed") {
        RCircElement y = sample_r_circ(gs, 2024);
        CHECK(y.lambda == x.lambda);
        CHECK(y.mu == x.mu);
        RCircElement z = sample_r_circ(gs, 2025);
        CHECK((z.lambda != x.lambda || z.mu != x.mu));
    }
}

TEST_CASE("the infinitesimal stabilizer of a generic x is exactly t0") {
    const GammaSystem& gs = gs32();
    RCircElement x = sample_r_circ(gs, 7);
    FieldMatrix stab = infinitesimal_stab(gs, x);  // throws unless it equals t0
    CHECK(stab.rows() == 4);
    CHECK(stab.cols() == gs.rep.n_generators());
}

TEST_CASE("torus characters through the gamma coordinates") {
    const GammaSystem& gs = gs32();
    const Field& f = gs.alg->field();
    const RootSystem& R = gs.alg->roots();
    std::array<fe, 8> t{3, 5, 7, 11, 13, 17, 19, 23};
    for (int i = 0; i < 8; ++i) {
        CHECK(character_value(gs, t, R.root(gs.gamma[i])) == t[i]);
        CHECK(character_value(gs, t, R.root(gs.gamma_neg[i])) == f.inv(t[i]));
    }
    // multiplicativity on a pair of module weights whose sum is a gamma
    const RootVec& g1 = R.root(gs.gamma[0]);
    for (const RootVec& beta : gs.rep.weights()) {
        RootVec rest = g1 + (-beta);
        if (!gs.vpos.count(rest.d)) continue;
        CHECK(f.mul(character_value(gs, t, beta), character_value(gs, t, rest)) == t[0]);
    }
}

TEST_CASE("monomial action, composition, and n0") {
    const GammaSystem& gs = gs32();
    RCircElement x = sample_r_circ(gs, 99);
    auto xv = r_to_module(gs, x);

    MonomialElement n0 = n0_element(gs, x);
    CHECK(apply_monomial(gs, n0, xv) == xv);
    CHECK(compose(gs, n0, n0).is_identity());

    // composition agrees with the composed action on the whole module
    RCircElement y = sample_r_circ(gs, 100);
    MonomialElement m0 = n0_element(gs, y);
    auto v = r_to_module(gs, y);
    CHECK(apply_monomial(gs, compose(gs, n0, m0), v) ==
          apply_monomial(gs, n0, apply_monomial(gs, m0, v)));
}

TEST_CASE("the group stabilizer is elementary abelian of order 16") {
    const GammaSystem& gs = gs32();
    RCircElement x = sample_r_circ(gs, 31337);
    auto xv = r_to_module(gs, x);
    // group_stab_enum itself certifies order 16, exponent 2, closure, the
    // lifts of sigma_1, sigma_2, sigma_3 and membership of n0
    auto stab = group_stab_enum(gs, x);
    REQUIRE(stab.size() == 16);
    std::size_t identities = 0;
    for (const auto& m : stab) {
        CHECK(apply_monomial(gs, m, xv) == xv);
        if (m.is_identity()) ++identities;
    }
    CHECK(identities == 1);
    CHECK(std::count(stab.begin(), stab.end(), n0_element(gs, x)) == 1);
}

TEST_CASE("any two generic elements have conjugate stabilizers") {
    const GammaSystem& gs = gs32();
    RCircElement x = sample_r_circ(gs, 1);
    RCircElement xp = sample_r_circ(gs, 2);
    MonomialElement h = conjugate_witness(gs, x, xp);  // throws if not a witness
    CHECK(h.w.is_identity());
    // h itself need not stabilize either element
    const Field& f = gs.alg->field();
    for (int i = 0; i < 8; ++i) {
        fe b2 = f.mul(h.t[i], h.t[i]);
        CHECK(b2 == f.div(f.mul(x.lambda[i], xp.mu[i]), f.mul(xp.lambda[i], x.mu[i])));
    }
}

TEST_CASE("the whole chain also goes through over GF(16)") {
    GammaSystem gs = GammaSystem::build(FieldSpec::gf2ext(4));
    CHECK(gs.m_divisors.back() == 2);
    auto c = centralizer_of_t0(gs);
    CHECK(c.dim_full == 24);
    CHECK(c.dim_d8 == 8);
    CHECK(c.spans_match);
    RCircElement x = sample_r_circ(gs, 5);
    CHECK(check_tower_identity(gs, x, 8));
    CHECK(infinitesimal_stab(gs, x).rows() == 4);
    CHECK(group_stab_enum(gs, x).size() == 16);
}

TEST_CASE("sampling refuses fields that are too small to be generic") {
    GammaSystem gs = GammaSystem::build(FieldSpec::gf2ext(2));
    CHECK_THROWS_AS(sample_r_circ(gs, 1), std::invalid_argument);
}

TEST_CASE("json summary") {
    auto j = gamma_system_to_json(gs32());
    CHECK(j["h8"].size() == 8);
    CHECK(j["gamma_doubled"][0][0] == 1);
    CHECK(j["m"][0][0] == -1);
    CHECK(j["m_snf_divisors"][7] == 2);
    CHECK(j["field"] == "GF(32)");
}
