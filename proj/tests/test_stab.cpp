#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <memory>
#include <vector>

#include "spinlie/stab.hpp"

using namespace spinlie;

namespace {

std::shared_ptr<const ChevalleyAlgebra> make_alg(RSType t, int r, LatticeTag tag, FieldSpec fs) {
    auto rs = std::make_shared<const RootSystem>(RootSystem::build(t, r));
    return std::make_shared<const ChevalleyAlgebra>(
        ChevalleyAlgebra::build(rs, CharacterLattice::make(*rs, tag), fs));
}

}  // namespace

TEST_CASE("rng streams are deterministic and decorrelated") {
    auto a = Xoshiro256ss::for_trial(42, 0);
    auto b = Xoshiro256ss::for_trial(42, 0);
    auto c = Xoshiro256ss::for_trial(42, 1);
    CHECK(a.next() == b.next());
    CHECK(a.next() == b.next());
    CHECK(Xoshiro256ss::for_trial(42, 0).next() != c.next());

    Field f7{FieldSpec::prime(7)};
    auto r = Xoshiro256ss::for_trial(1, 2);
    auto v = random_vector(100, f7, r);
    for (fe x : v) CHECK(x < 7);
}

TEST_CASE("action matrix and stabilizer dimension basics") {
    auto alg = make_alg(RSType::D, 4, LatticeTag::SimplyConnected, FieldSpec::prime(2));
    Representation hs = halfspin_rep(alg, 0);

    std::vector<fe> zero(hs.dim(), 0);
    CHECK(action_matrix(hs, zero).is_zero());
    CHECK(stab_dim(hs, zero) == alg->dim());

    auto rng = Xoshiro256ss::for_trial(5, 0);
    auto v = random_vector(hs.dim(), hs.field(), rng);
    CHECK(rank(action_matrix(hs, v)) <= hs.dim());
    CHECK(stab_dim(hs, v) + rank(action_matrix(hs, v)) == alg->dim());
}

TEST_CASE("generic stabilizer dimensions match the known values") {
    SUBCASE("half-spin of D_7: minimum 28") {
        Representation rep = build_target_rep(14, LatticeTag::SimplyConnected, RepKind::Spin,
                                              FieldSpec::prime(2));
        CHECK(rep.dim() == 64);
        auto rpt = search_generic_stab(rep, 64, 2024, "Spin_14", 28);
        CHECK(rpt.min_dim == 28);
    }
    SUBCASE("spin of so_13: minimum 16") {
        Representation rep = build_target_rep(13, LatticeTag::SimplyConnected, RepKind::Spin,
                                              FieldSpec::prime(2));
        CHECK(rep.dim() == 64);
        CHECK(rep.n_generators() == 78);
        auto rpt = search_generic_stab(rep, 64, 2024, "Spin_13", 16);
        CHECK(rpt.min_dim == 16);
    }
    SUBCASE("small-n ladder: 6 and 7") {
        auto results = verify_targets(
            {Target{6, LatticeTag::SimplyConnected, RepKind::HalfSpin, 11, "SL_3"},
             Target{7, LatticeTag::SimplyConnected, RepKind::Spin, 14, "G_2"}},
            64, 7);
        for (const auto& r : results) {
            CAPTURE(r.target.n);
            CHECK(r.passed);
            CHECK(r.report.min_dim == r.target.expected_dim);
        }
    }
}

TEST_CASE("fixed spaces") {
    SUBCASE("zero element fixes everything") {
        auto alg = make_alg(RSType::D, 5, LatticeTag::SimplyConnected, FieldSpec::prime(7));
        Representation hs = halfspin_rep(alg, 0);
        CHECK(fixed_space_dim(hs, alg->zero()) == 16);
    }
    SUBCASE("long root involution on the D_9 half-spin fixes 3/4") {
        auto alg = make_alg(RSType::D, 9, LatticeTag::SimplyConnected, FieldSpec::prime(2));
        Representation hs = halfspin_rep(alg, 0);
        CHECK(hs.dim() == 256);
        FieldMatrix g = unipotent_from_roots(hs, {0});
        CHECK(group_fixed_dim(g) == 192);
    }
    SUBCASE("noncentral elements fix at most 3/4 of the spin module, D_6 over GF(7)") {
        auto alg = make_alg(RSType::D, 6, LatticeTag::SimplyConnected, FieldSpec::prime(7));
        Representation spin =
            Representation::direct_sum(halfspin_rep(alg, 0), halfspin_rep(alg, 1));
        CHECK(spin.dim() == 64);
        int checked = 0;
        for (int t = 0; t < 40; ++t) {
            auto rng = Xoshiro256ss::for_trial(31, std::uint64_t(t));
            auto x = random_vector(alg->dim(), alg->field(), rng);
            if (alg->ad_matrix(x).is_zero()) continue;  // central, excluded
            ++checked;
            CHECK(fixed_space_dim(spin, x) <= 48);
        }
        CHECK(checked >= 35);
    }
    SUBCASE("singular group elements are rejected") {
        Field f{FieldSpec::prime(2)};
        CHECK_THROWS(group_fixed_dim(FieldMatrix(f, 3, 3)));
    }
}

TEST_CASE("stabilizer dimension is conjugation invariant") {
    auto alg = make_alg(RSType::D, 6, LatticeTag::SimplyConnected, FieldSpec::prime(2));
    Representation hs = halfspin_rep(alg, 0);
    const RootSystem& R = alg->roots();
    const Field& f = hs.field();
    for (int t = 0; t < 50; ++t) {
        auto rng = Xoshiro256ss::for_trial(77, std::uint64_t(t));
        auto v = random_vector(hs.dim(), f, rng);
        std::size_t a = rng.uniform(R.size());
        // v' = (1 + rho(e_a)) v
        FieldMatrix e = hs.rho_generator(alg->root_index(a));
        auto w = e.apply(v);
        for (std::size_t i = 0; i < v.size(); ++i) w[i] = f.add(w[i], v[i]);
        CHECK(stab_dim(hs, v) == stab_dim(hs, w));
    }
}

TEST_CASE("a GF(2) witness certifies the same dimension over GF(16)") {
    Representation rep2 = build_target_rep(12, LatticeTag::SimplyConnected, RepKind::HalfSpin,
                                           FieldSpec::prime(2));
    auto rpt = search_generic_stab(rep2, 32, 99, "Spin_12", 35);
    REQUIRE(rpt.min_dim == 35);
    Representation rep16 = build_target_rep(12, LatticeTag::SimplyConnected, RepKind::HalfSpin,
                                            FieldSpec::gf2ext(4));
    // GF(2) coordinates embed verbatim into GF(16)
    CHECK(stab_dim(rep16, rpt.witness) == rpt.min_dim);
}

TEST_CASE("report serialization") {
    SUBCASE("base64 round trip") {
        for (std::size_t n : {0u, 1u, 2u, 3u, 50u}) {
            auto rng = Xoshiro256ss::for_trial(3, n);
            std::vector<fe> bytes(n);
            for (auto& b : bytes) b = fe(rng.uniform(256));
            CHECK(base64_decode(base64_encode(bytes)) == bytes);
        }
        CHECK_THROWS(base64_decode("ab!="));
    }
    SUBCASE("report fields and witness survive JSON") {
        Representation rep = build_target_rep(8, LatticeTag::SimplyConnected, RepKind::HalfSpin,
                                              FieldSpec::prime(2));
        auto rpt = search_generic_stab(rep, 16, 5, "Spin_8");
        auto j = rpt.to_json();
        CHECK(j["schema"] == "spinlie.stab-report/1");
        CHECK(j["rng"]["algorithm"] == std::string(kRngAlgorithm));
        CHECK(j["min_dim"] == rpt.min_dim);
        CHECK(base64_decode(j["witness"].get<std::string>()) == rpt.witness);
        std::uint64_t total = 0;
        for (auto& [k, v] : rpt.histogram) {
            CHECK(k >= rpt.min_dim);
            total += v;
        }
        CHECK(total == rpt.trials);
    }
    SUBCASE("same seed, same report") {
        Representation rep = build_target_rep(8, LatticeTag::SimplyConnected, RepKind::HalfSpin,
                                              FieldSpec::prime(2));
        auto a = search_generic_stab(rep, 16, 5, "Spin_8");
        auto b = search_generic_stab(rep, 16, 5, "Spin_8");
        CHECK(a.min_dim == b.min_dim);
        CHECK(a.witness == b.witness);
        CHECK(a.histogram == b.histogram);
    }
}

TEST_CASE("target descriptors") {
    CHECK(standard_targets().size() == 16);
    CHECK(Target{20, LatticeTag::HalfSpin, RepKind::HalfSpin, 0, ""}.group_name() == "HSpin_20");
    CHECK(Target{14, LatticeTag::SimplyConnected, RepKind::Spin, 28, ""}.group_name() == "Spin_14");
    CHECK_THROWS(build_target_rep(13, LatticeTag::SimplyConnected, RepKind::Vector,
                                  FieldSpec::prime(2)));
    CHECK_THROWS(build_target_rep(4, LatticeTag::SimplyConnected, RepKind::Spin,
                                  FieldSpec::prime(2)));
    Representation vh = build_target_rep(16, LatticeTag::SimplyConnected,
                                         RepKind::VectorPlusHalfSpin, FieldSpec::prime(2));
    CHECK(vh.dim() == 16 + 128);
}
