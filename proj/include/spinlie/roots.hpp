// roots.hpp -- root systems D_r and E8 in Bourbaki coordinates.
//
// All vectors carry doubled coordinates: the entry d_i stands for d_i / 2, so
// half-integer roots stay in exact integer arithmetic.  (alpha|beta) of two
// doubled vectors is dot(d, d') / 4.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "spinlie/intmatrix.hpp"

namespace spinlie {

struct RootVec {
    std::vector<int> d;  // doubled coordinates

    int rank() const { return int(d.size()); }
    RootVec operator-() const;
    RootVec operator+(const RootVec& o) const;
    bool operator==(const RootVec&) const = default;
    auto operator<=>(const RootVec&) const = default;
};

// (a|b) for doubled vectors; throws if the product is not an integer.
long long pair_ip(const RootVec& a, const RootVec& b);

enum class RSType { D, E8 };

class RootSystem {
public:
    static RootSystem build(RSType type, int rank);

    RSType type() const { return type_; }
    int rank() const { return rank_; }
    std::size_t size() const { return roots_.size(); }
    std::size_t n_positive() const { return roots_.size() / 2; }

    const RootVec& root(std::size_t i) const { return roots_[i]; }
    const std::vector<RootVec>& roots() const { return roots_; }
    std::size_t simple(int k) const { return simple_[k]; }  // index of alpha_{k+1}

    bool is_positive(std::size_t i) const { return i < n_positive(); }
    std::size_t neg_index(std::size_t i) const {
        return i < n_positive() ? i + n_positive() : i - n_positive();
    }
    // index of a + b if it is a root
    std::optional<std::size_t> sum_index(std::size_t a, std::size_t b) const;
    std::optional<std::size_t> index_of(const RootVec& v) const;

    // coordinates of root i in the simple-root basis (always integers)
    const std::vector<int>& simple_coords(std::size_t i) const { return coords_[i]; }
    int height(std::size_t i) const { return height_[i]; }

    const IntMatrix& cartan() const { return cartan_; }

    // basis of the weight lattice P = dual of the root lattice (doubled coords,
    // one row per basis vector); for E8 this equals the simple roots
    const IntMatrix& weight_basis() const { return weight_basis_; }
    // integer coordinates of a P-member in the weight basis
    std::vector<int> weight_coords(const RootVec& v) const;
    // simple-basis coordinates of a root-lattice member; throws outside Z.Phi
    std::vector<int> root_coords(const RootVec& v) const;

private:
    RSType type_;
    int rank_;
    std::vector<RootVec> roots_;
    std::vector<std::size_t> simple_;
    std::vector<std::vector<int>> coords_;
    std::vector<int> height_;
    IntMatrix cartan_;
    IntMatrix weight_basis_;
    IntMatrix wb_adj_;  // adjugate of weight_basis^T, for coordinate solves
    bigint wb_det_;
    IntMatrix sb_adj_;  // same for the simple-root basis
    bigint sb_det_;
    std::map<std::vector<int>, std::size_t> index_;
};

// Signed permutation w: eps_i -> sign[i] * eps_{perm[i]} (0-based).
struct SignedPerm {
    std::vector<int> perm;
    std::vector<int> sign;  // +1 / -1

    RootVec apply(const RootVec& v) const;
    SignedPerm compose(const SignedPerm& o) const;  // this after o
    SignedPerm inverse() const;
    bool is_identity() const;
    bool operator==(const SignedPerm&) const = default;
    static SignedPerm identity(int r);
};

// Streams all 2^{r-1} r! elements of W(D_r) as signed permutations with an
// even number of sign flips.  r > 8 is rejected (enumeration guard).
void for_each_weyl_d(int r, const std::function<void(const SignedPerm&)>& fn);

}  // namespace spinlie
