// matrix.hpp -- dense exact matrices over GF(p^e).
//
// Storage contract: for p = 2, e = 1 each row is a contiguous run of 64-bit
// words, one bit per entry.  All elimination uses deterministic pivoting
// (first nonzero row in column order) so results are bit-reproducible.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spinlie/field.hpp"

namespace spinlie {

class FieldMatrix {
public:
    FieldMatrix(Field f, std::size_t rows, std::size_t cols);

    const Field& field() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool packed() const { return packed_; }

    fe get(std::size_t r, std::size_t c) const {
        if (packed_) return fe((bits_[r * wpr_ + c / 64] >> (c % 64)) & 1u);
        return ent_[r * cols_ + c];
    }
    void set(std::size_t r, std::size_t c, fe v) {
        if (packed_) {
            std::uint64_t m = 1ull << (c % 64);
            if (v) bits_[r * wpr_ + c / 64] |= m;
            else bits_[r * wpr_ + c / 64] &= ~m;
        } else {
            ent_[r * cols_ + c] = v;
        }
    }

    // dst += s * src (rows)
    void row_axpy(std::size_t dst, std::size_t src, fe s);
    void swap_rows(std::size_t a, std::size_t b);
    void scale_row(std::size_t r, fe s);

    FieldMatrix transpose() const;
    FieldMatrix mul(const FieldMatrix& other) const;
    std::vector<fe> apply(const std::vector<fe>& v) const;  // this * v

    bool is_zero() const;
    bool operator==(const FieldMatrix& o) const;

    // raw packed words of one row (p = 2, e = 1 only)
    const std::uint64_t* row_words(std::size_t r) const { return &bits_[r * wpr_]; }
    std::size_t words_per_row() const { return wpr_; }

private:
    Field f_;
    std::size_t rows_, cols_;
    bool packed_;
    std::size_t wpr_ = 0;
    std::vector<std::uint64_t> bits_;
    std::vector<fe> ent_;
};

std::size_t rank(const FieldMatrix& m);

// Rows form a basis of the right kernel: m * row^T = 0 for every row.
FieldMatrix kernel_basis(const FieldMatrix& m);

// One solution x of m x = rhs, or nullopt if inconsistent.
std::optional<std::vector<fe>> solve(const FieldMatrix& m, const std::vector<fe>& rhs);

FieldMatrix identity_matrix(const Field& f, std::size_t n);

// Inverse of a square matrix; throws on singular input.
FieldMatrix inverse(const FieldMatrix& m);

// Determinant (square input).
fe determinant(const FieldMatrix& m);

}  // namespace spinlie
