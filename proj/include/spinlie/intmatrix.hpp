// intmatrix.hpp -- exact integer matrices, Smith normal form, lattice helpers.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "spinlie/matrix.hpp"

namespace spinlie {

using bigint = boost::multiprecision::cpp_int;

class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const bigint& get(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }
    bigint& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, bigint v) { e_[r * cols_ + c] = std::move(v); }

    IntMatrix mul(const IntMatrix& o) const;
    IntMatrix transpose() const;
    bool operator==(const IntMatrix&) const = default;

    static IntMatrix identity(std::size_t n);

private:
    std::size_t rows_, cols_;
    std::vector<bigint> e_;
};

// Elementary divisors d_1 | d_2 | ... | d_k plus the unimodular transforms:
// U * A * V equals the divisor diagonal exactly.
struct SnfResult {
    std::vector<bigint> divisors;
    IntMatrix u, v;
};

SnfResult smith_normal_form(const IntMatrix& a);

bigint det(const IntMatrix& a);                        // square only, Bareiss
IntMatrix adjugate(const IntMatrix& a);                // a * adj = det * I

// Row basis (Hermite-style echelon over Z) of the lattice spanned by the rows.
IntMatrix lattice_row_basis(const IntMatrix& gens);

// Entrywise reduction into GF(p) (e = 1 fields, or prime subfield of GF(2^e)).
FieldMatrix reduce_mod(const IntMatrix& a, const Field& f);

}  // namespace spinlie
