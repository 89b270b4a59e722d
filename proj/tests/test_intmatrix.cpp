#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>

#include "spinlie/intmatrix.hpp"

using namespace spinlie;

namespace {

IntMatrix diag(std::initializer_list<int> v) {
    IntMatrix m(v.size(), v.size());
    std::size_t i = 0;
    for (int x : v) {
        m.set(i, i, x);
        ++i;
    }
    return m;
}

std::uint64_t lcg(std::uint64_t& s) { return s = s * 6364136223846793005ull + 1442695040888963407ull; }

IntMatrix random_int_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, int span) {
    IntMatrix m(rows, cols);
    std::uint64_t s = seed;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m.set(r, c, int((lcg(s) >> 33) % (2 * span + 1)) - span);
    return m;
}

// validate SNF structurally: U A V diagonal with the reported divisor chain,
// and U, V unimodular
void check_snf(const IntMatrix& a) {
    SnfResult s = smith_normal_form(a);
    CHECK(abs(det(s.u)) == 1);
    CHECK(abs(det(s.v)) == 1);
    IntMatrix d = s.u.mul(a).mul(s.v);
    for (std::size_t r = 0; r < d.rows(); ++r)
        for (std::size_t c = 0; c < d.cols(); ++c) {
            if (r == c && r < s.divisors.size())
                CHECK(d.get(r, c) == s.divisors[r]);
            else
                CHECK(d.get(r, c) == 0);
        }
    for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i) {
        CHECK(s.divisors[i] > 0);
        CHECK(s.divisors[i + 1] % s.divisors[i] == 0);
    }
}

}  // namespace

TEST_CASE("SNF of near-diagonal matrices") {
    SnfResult s = smith_normal_form(diag({2, 1, 6}));
    REQUIRE(s.divisors.size() == 3);
    CHECK(s.divisors[0] == 1);
    CHECK(s.divisors[1] == 2);
    CHECK(s.divisors[2] == 6);

    SnfResult id = smith_normal_form(IntMatrix::identity(8));
    REQUIRE(id.divisors.size() == 8);
    for (auto& d : id.divisors) CHECK(d == 1);
}

TEST_CASE("SNF divisibility chain on a non-coprime diagonal") {
    SnfResult s = smith_normal_form(diag({4, 6}));
    REQUIRE(s.divisors.size() == 2);
    CHECK(s.divisors[0] == 2);
    CHECK(s.divisors[1] == 12);
}

TEST_CASE("SNF transforms are exact and unimodular on random matrices") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        check_snf(random_int_matrix(5, 5, seed * 313, 9));
        check_snf(random_int_matrix(4, 7, seed * 71, 5));
        check_snf(random_int_matrix(7, 4, seed * 157, 5));
    }
}

TEST_CASE("SNF of a rank-deficient matrix") {
    IntMatrix m(3, 3);
    // rows 0 and 2 proportional
    int vals[3][3] = {{2, 4, 6}, {1, 0, 1}, {3, 6, 9}};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m.set(r, c, vals[r][c]);
    SnfResult s = smith_normal_form(m);
    REQUIRE(s.divisors.size() == 2);
    check_snf(m);
}

TEST_CASE("det: Bareiss agrees with cofactor expansion via adjugate") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        IntMatrix a = random_int_matrix(5, 5, seed * 911, 7);
        bigint d = det(a);
        IntMatrix adj = adjugate(a);
        IntMatrix prod = a.mul(adj);
        for (std::size_t r = 0; r < 5; ++r)
            for (std::size_t c = 0; c < 5; ++c) CHECK(prod.get(r, c) == (r == c ? d : bigint(0)));
    }
    CHECK(det(IntMatrix::identity(6)) == 1);
    CHECK(det(diag({2, 3, -5})) == -30);
}

TEST_CASE("lattice_row_basis") {
    SUBCASE("redundant generators collapse") {
        IntMatrix g(3, 2);
        g.set(0, 0, 2); g.set(0, 1, 0);
        g.set(1, 0, 0); g.set(1, 1, 3);
        g.set(2, 0, 2); g.set(2, 1, 3);
        IntMatrix b = lattice_row_basis(g);
        REQUIRE(b.rows() == 2);
        // index of the lattice in Z^2 is preserved
        CHECK(abs(det(b)) == 6);
    }
    SUBCASE("basis spans the same lattice as the generators") {
        // Z(2,4) + Z(6,8): index |2*8-4*6| = 8
        IntMatrix g(2, 2);
        g.set(0, 0, 2); g.set(0, 1, 4);
        g.set(1, 0, 6); g.set(1, 1, 8);
        IntMatrix b = lattice_row_basis(g);
        REQUIRE(b.rows() == 2);
        CHECK(abs(det(b)) == 8);
    }
    SUBCASE("rank-deficient generators") {
        IntMatrix g(3, 3);
        g.set(0, 0, 1); g.set(0, 1, 2); g.set(0, 2, 3);
        g.set(1, 0, 2); g.set(1, 1, 4); g.set(1, 2, 6);
        g.set(2, 0, 0); g.set(2, 1, 0); g.set(2, 2, 0);
        CHECK(lattice_row_basis(g).rows() == 1);
    }
}

TEST_CASE("reduce_mod") {
    Field f7(FieldSpec::prime(7));
    IntMatrix a(2, 2);
    a.set(0, 0, -1); a.set(0, 1, 15);
    a.set(1, 0, 7);  a.set(1, 1, -9);
    FieldMatrix m = reduce_mod(a, f7);
    CHECK(m.get(0, 0) == 6);
    CHECK(m.get(0, 1) == 1);
    CHECK(m.get(1, 0) == 0);
    CHECK(m.get(1, 1) == 5);
}
