// chevalley.hpp -- Chevalley structure constants over Z and Lie algebras over
// finite fields, with isogeny-type-aware torus lattices and the [p]-power map.
#pragma once

#include <memory>
#include <vector>

#include "spinlie/matrix.hpp"
#include "spinlie/roots.hpp"

#include "json.hpp"

namespace spinlie {

enum class LatticeTag { SimplyConnected, HalfSpin, Adjoint };

const char* lattice_name(LatticeTag t);

// A lattice X with Z.Phi <= X <= P, given by a row basis in doubled coords.
struct CharacterLattice {
    LatticeTag tag;
    IntMatrix basis;  // r x r, rows are doubled coordinates

    static CharacterLattice make(const RootSystem& rs, LatticeTag tag);
};

// Structure-constant signs.  A bimultiplicative asymmetry function eps on the
// root lattice (values in {+-1}, eps(a,b) eps(b,a) = (-1)^{(a|b)},
// eps(a,a) = -1 for roots) is fixed once per root system by the canonical
// lower-triangular choice on the simple basis; root vectors are then rescaled
// by -1 on negative roots so that [e_a, e_{-a}] = +h_a.  Module signs anchor
// the second argument at a base weight lambda_0 of the orbit, so eps only
// ever sees root-lattice vectors.  The Jacobi test certifies the choice.
class Cocycle {
public:
    explicit Cocycle(const RootSystem& rs);

    // eps with both arguments roots (by index)
    int eps_roots(std::size_t a, std::size_t b) const;
    // eps(root a, q) with q given by integer simple-basis coords
    int eps_root_q(std::size_t a, const std::vector<int>& qcoords) const;
    // Chevalley sign N_{a,b} (+-1) for roots with a + b a root
    int constant_sign(std::size_t a, std::size_t b) const;
    // sign of the action of e_a on v_lambda, lambda = lambda_0 + q
    int module_sign(std::size_t a, const std::vector<int>& qcoords) const;

private:
    const RootSystem* rs_;
    int rank_;
    std::vector<std::uint8_t> bits_;  // e_{ij} = log eps(alpha_i, alpha_j), mod 2
    std::vector<std::vector<std::uint8_t>> root_simple2_;  // coords mod 2
    std::vector<int> sigma_;          // +1 on positives, -1 on negatives
    int f2(const std::vector<std::uint8_t>& m, const std::vector<std::uint8_t>& n) const;
};

// Basis-indexed Lie algebra over a finite field: torus basis from the
// cocharacter lattice Y = dual(X) reduced mod p, then one e_alpha per root in
// root-system order.
class ChevalleyAlgebra {
public:
    using Element = std::vector<fe>;

    static ChevalleyAlgebra build(std::shared_ptr<const RootSystem> rs,
                                  const CharacterLattice& lattice, FieldSpec fs);

    const RootSystem& roots() const { return *rs_; }
    std::shared_ptr<const RootSystem> roots_ptr() const { return rs_; }
    const Field& field() const { return f_; }
    LatticeTag lattice_tag() const { return tag_; }
    const Cocycle& cocycle() const { return *cc_; }

    std::size_t dim() const { return rs_->size() + rs_->rank(); }
    int rank() const { return rs_->rank(); }
    std::size_t root_index(std::size_t root) const { return rs_->rank() + root; }

    Element zero() const { return Element(dim(), 0); }
    Element basis_element(std::size_t i) const;
    Element coroot(std::size_t root) const;  // h_alpha as a torus element

    // integer coords of h_alpha in the y-basis
    const std::vector<int>& coroot_coords(std::size_t root) const { return coroot_y_[root]; }
    // (root | y_k) as an integer
    int pairing(std::size_t root, int k) const { return pair_y_root_[root][k]; }
    // (lambda | y_k) for a doubled weight vector; throws if non-integral
    long long weight_pairing(const RootVec& lambda, int k) const;

    Element bracket(const Element& x, const Element& y) const;
    Element p_power(const Element& x) const;  // p = 2 only (Jacobson expansion)
    FieldMatrix ad_matrix(const Element& x) const;

    // characteristic-2 symplectic form on the torus part
    fe symplectic_form(const Element& t1, const Element& t2) const;

    // kernel of the adjoint action; rows are basis elements of the center
    FieldMatrix center() const;

    const IntMatrix& xbasis() const { return xb_; }
    const IntMatrix& ybasis() const { return yb_; }

private:
    std::shared_ptr<const RootSystem> rs_;
    Field f_;
    LatticeTag tag_;
    IntMatrix xb_, yb_;  // doubled coords
    std::shared_ptr<const Cocycle> cc_;
    std::vector<std::vector<int>> coroot_y_;
    std::vector<std::vector<int>> pair_y_root_;
    std::vector<std::vector<int>> symp_;  // (y_k|y_l) mod 2, p = 2 only

    ChevalleyAlgebra(Field f) : f_(std::move(f)) {}
};

nlohmann::json rootsystem_to_json(const RootSystem& rs);
nlohmann::json algebra_to_json(const ChevalleyAlgebra& alg);

}  // namespace spinlie
