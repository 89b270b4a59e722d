#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "spinlie/edim.hpp"

using namespace spinlie;

TEST_CASE("essential dimension of Spin_n") {
    SUBCASE("the n = 15..20 values") {
        CHECK(ed_spin(15).value == 23);
        CHECK(ed_spin(16).value == 24);
        CHECK(ed_spin(17).value == 120);
        CHECK(ed_spin(18).value == 103);
        CHECK(ed_spin(19).value == 341);
        CHECK(ed_spin(20).value == 326);
    }
    SUBCASE("branch bookkeeping") {
        auto r16 = ed_spin(16);
        CHECK(r16.branch == "n = 0 mod 4");
        CHECK(r16.two_m == 16);  // 16 = 2^4 exactly divides 16
        auto r20 = ed_spin(20);
        CHECK(r20.two_m == 4);   // 20 = 4 * 5
        CHECK(ed_spin(18).two_m == 0);
        CHECK(ed_spin(15).branch == "n = 1,3 mod 4");
        CHECK(ed_spin(17).in_formula_domain);
        CHECK(!ed_spin(14).in_formula_domain);
    }
    SUBCASE("domain guards") {
        CHECK_THROWS(ed_spin(4));
        CHECK_THROWS(ed_spin(2000000));
    }
    SUBCASE("grows like 2^{n/2}: a large exact value") {
        // n = 101: 2^50 - 5050
        CHECK(ed_spin(101).value == (bigint(1) << 50) - 5050);
    }
}

TEST_CASE("essential dimension of HSpin_n") {
    CHECK(ed_hspin(20).value == 322);   // 2^9 - 190
    CHECK(ed_hspin(24).value == 1772);  // 2^11 - 276
    CHECK_THROWS(ed_hspin(18));
    CHECK_THROWS(ed_hspin(22));
    CHECK_THROWS(ed_hspin(16));
}

TEST_CASE("group and module dimensions") {
    CHECK(dim_group(16) == 120);
    CHECK(dim_halfspin(16) == 128);
    CHECK(dim_group(19) == 171);
    CHECK(dim_halfspin(19) == 512);
    CHECK(dim_group(6) == 15);
    CHECK(dim_halfspin(6) == 4);
}

TEST_CASE("the corollary restated as an identity between the dimensions") {
    for (int n = 15; n <= 64; ++n) {
        bigint expect = dim_halfspin(n) - dim_group(n);
        if (n % 4 == 0) expect += ed_spin(n).two_m;
        CHECK(ed_spin(n).value == expect);
    }
}

TEST_CASE("the finiteness inequality holds for 21 <= n <= 64") {
    for (int n = 21; n <= 64; ++n) {
        CAPTURE(n);
        CHECK(spin_inequality_holds(n));
    }
    // and fails in the small range where the stabilizers are positive-dimensional
    CHECK(!spin_inequality_holds(14));
}

TEST_CASE("table emitters") {
    std::string text = ed_table_text(15, 20);
    CHECK(text.find("23") != std::string::npos);
    CHECK(text.find("326") != std::string::npos);
    CHECK(text.find("ed(HSpin_n)") != std::string::npos);
    CHECK(text.find("322") != std::string::npos);

    std::string csv = ed_table_csv(15, 20);
    CHECK(csv.find("15,23,") != std::string::npos);
    CHECK(csv.find("16,24,n = 0 mod 4,16,") != std::string::npos);
    CHECK(csv.find("20,326,n = 0 mod 4,4,322") != std::string::npos);
    CHECK_THROWS(ed_table_csv(5, 4));
}
