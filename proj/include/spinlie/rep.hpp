// rep.hpp -- modules for the spin-group Lie algebras: vector, spin and
// half-spin representations, subalgebra restrictions, nilpotent class
// representatives, Jordan types, triality on torus exponents.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "spinlie/chevalley.hpp"

namespace spinlie {

// Column-sparse matrix over a finite field.  Minuscule-module actions have at
// most one entry per column, so this is the primary storage for
// representation matrices; dense matrices are materialized on demand.
struct SparseMat {
    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<std::pair<std::uint32_t, fe>>> col_entries;

    SparseMat() = default;
    SparseMat(std::size_t r, std::size_t c) : rows(r), cols(c), col_entries(c) {}

    void add(std::size_t r, std::size_t c, fe v, const Field& f);
    std::vector<fe> apply(const std::vector<fe>& v, const Field& f) const;
    FieldMatrix to_dense(const Field& f) const;
    bool is_zero() const;
};

// A module for a Lie algebra presented by a generating basis.  For a full
// Chevalley algebra the generators are its basis elements; for a subalgebra
// (annihilator of a vector, the D_8 inside E8, ...) the generators are stored
// as coordinate vectors in the parent algebra.
class Representation {
public:
    using Element = ChevalleyAlgebra::Element;

    const ChevalleyAlgebra& algebra() const { return *alg_; }
    std::shared_ptr<const ChevalleyAlgebra> algebra_ptr() const { return alg_; }
    const Field& field() const { return alg_->field(); }

    std::size_t dim() const { return dim_; }
    std::size_t n_generators() const { return action_.size(); }
    const SparseMat& action(std::size_t i) const { return action_[i]; }
    // generator i as an element of the parent algebra
    const Element& generator(std::size_t i) const { return gens_[i]; }
    bool is_full_algebra() const { return full_; }

    // weight of basis vector i of the module (doubled coords); empty when the
    // module has no distinguished torus-diagonal basis
    const std::vector<RootVec>& weights() const { return weights_; }

    // rho(x) for x given in parent-algebra coordinates
    FieldMatrix rho(const Element& x) const;
    FieldMatrix rho_generator(std::size_t i) const { return action_[i].to_dense(field()); }
    std::vector<fe> apply(const Element& x, const std::vector<fe>& v) const;

    std::string describe() const { return desc_; }

    // builders ---------------------------------------------------------------
    // weight-basis module on a set of weights, actions from the cocycle signs
    static Representation minuscule(std::shared_ptr<const ChevalleyAlgebra> alg,
                                    std::vector<RootVec> weights, std::string desc);
    // same module, generated by an explicit subalgebra basis of the parent
    static Representation restricted(const Representation& rep, std::vector<Element> basis,
                                     std::string desc);
    static Representation direct_sum(const Representation& a, const Representation& b);

private:
    std::shared_ptr<const ChevalleyAlgebra> alg_;
    std::size_t dim_ = 0;
    bool full_ = true;
    std::vector<Element> gens_;
    std::vector<SparseMat> action_;
    std::vector<RootVec> weights_;
    std::string desc_;
    friend Representation e8_restriction_halfspin(FieldSpec);
    friend Representation load_representation(std::shared_ptr<const ChevalleyAlgebra>,
                                              const std::string&, std::uint64_t);
};

// the 2r-dimensional vector representation of a D_r algebra
Representation vector_rep(std::shared_ptr<const ChevalleyAlgebra> alg);
// half-spin representation on the weights (+-1/2, ..., +-1/2) of the given
// minus-sign parity (0 or 1); dimension 2^{r-1}
Representation halfspin_rep(std::shared_ptr<const ChevalleyAlgebra> alg, int parity);
// convenience: build the algebra too
Representation halfspin_rep(int r, int parity, LatticeTag tag, FieldSpec fs);
Representation vector_rep(int r, LatticeTag tag, FieldSpec fs);

// D_8 subalgebra of E8 (torus + integer-coordinate root vectors) acting on
// the 128-dimensional span of the half-integer root vectors
Representation e8_restriction_halfspin(FieldSpec fs);

// basis of the annihilator subalgebra {x : rho(x) v = 0}
std::vector<Representation::Element> annihilator_subalgebra(const Representation& rep,
                                                            const std::vector<fe>& v);

// The odd spin construction: so_{2r-1} as the stabilizer of the anisotropic
// vector y = v_{eps_1} + v_{-eps_1} of the vector representation, with the
// half-spin action restricted.  Returns the subalgebra basis and the
// 2^{r-1}-dimensional spin module.
struct BTypeResult {
    std::vector<Representation::Element> basis;
    std::vector<fe> y;  // the anisotropic vector, in vector-rep coordinates
    Representation vec;   // vector rep of the ambient D_r
    Representation spin;  // restricted half-spin module
};
BTypeResult b_type_spin(int r, FieldSpec fs);

// quadratic value of a vector-rep element (sum over hyperbolic pairs)
fe vector_rep_quadratic(const Representation& vrep, const std::vector<fe>& v);

// --- nilpotent class representatives (p odd) ---------------------------------

// weakly decreasing positive partition; for so_n even parts must have even
// multiplicity (validated)
struct Partition {
    std::vector<int> parts;
    explicit Partition(std::vector<int> p);
    int total() const;
};

// Element x of the D_r algebra whose vector-rep matrix is nilpotent with
// Jordan type lambda (n = 2r), or lambda + one extra 1-block annihilating the
// anchor y (n = 2r - 1, so x lies in so_n).  Jordan type re-verified.
Representation::Element nilpotent_from_partition(const Representation& vrep, int n,
                                                 const Partition& lambda);

// Jordan partition of a nilpotent matrix; throws if m is not nilpotent
Partition jordan_type(const FieldMatrix& m);

// --- torus combinatorics ------------------------------------------------------

// torus element with eigenvalue exponents c_i mod m on the doubled-coordinate
// basis: the weight lambda gets eigenvalue zeta^{(sum c_i lambda_d[i]) / 2}
struct ExponentVector {
    std::vector<long long> c;
    long long m = 0;  // modulus (order of zeta); m >= 1
};

// dim of the fixed space / largest eigenspace of the torus element on the
// weight list; pure integer combinatorics
std::size_t torus_fixed_dim(const std::vector<RootVec>& weights, const ExponentVector& ev);
std::size_t torus_max_eigenspace(const std::vector<RootVec>& weights, const ExponentVector& ev);
// true if some root pairs nontrivially with the exponent vector
bool torus_noncentral(const RootSystem& rs, const ExponentVector& ev);

// triality images of a rank-4 torus exponent vector with doubled entries
// (t_i = zeta^{c_i/2}); each image is determined up to a global sign epsilon,
// which the caller must treat as declared +-
std::pair<ExponentVector, ExponentVector> triality_torus_image(const ExponentVector& ev);

// --- group elements -----------------------------------------------------------

// product of (I + rho(e_alpha)) over a pairwise-orthogonal root list; p = 2;
// verified to be an involution
FieldMatrix unipotent_from_roots(const Representation& rep, const std::vector<std::size_t>& roots);

// --- persistence ---------------------------------------------------------------

// binary export: header (description, rank, field, dims) + packed action
// matrices; returns the FNV-1a content digest
std::uint64_t save_representation(const Representation& rep, const std::string& path);
// reload onto a compatible algebra; verifies the digest
Representation load_representation(std::shared_ptr<const ChevalleyAlgebra> alg,
                                   const std::string& path, std::uint64_t expect_digest);
std::uint64_t representation_digest(const Representation& rep);

}  // namespace spinlie
