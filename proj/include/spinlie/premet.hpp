// premet.hpp -- the E8 appendix computation: Hadamard-Sylvester root system
// Gamma, the toral subalgebra t0, generic elements of r, and their
// infinitesimal and group stabilizers in characteristic 2.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "spinlie/rep.hpp"

#include "json.hpp"

namespace spinlie {

// The eight pairwise-orthogonal half-integer roots gamma_1..gamma_8 (rows of
// H_8 = H_2 x H_2 x H_2 in doubled coordinates) inside E8 over GF(2^e),
// together with the D_8 subalgebra acting on the 128-dimensional span of the
// half-integer root vectors.
struct GammaSystem {
    std::shared_ptr<const ChevalleyAlgebra> alg;  // E8, adjoint lattice
    Representation rep;                           // the D_8 action on V
    IntMatrix h8;                                 // 8 x 8 sign matrix
    std::vector<std::size_t> gamma;               // root indices of gamma_i
    std::vector<std::size_t> gamma_neg;           // root indices of -gamma_i
    IntMatrix m;                                  // (gamma_i | alpha_j)
    std::vector<bigint> m_divisors;               // SNF divisors of m

    // position of each half-integer root in the module basis
    std::map<std::vector<int>, std::size_t> vpos;

    // verifies: H8 H8^T = 8I; gamma_i in the half-integer part; pairwise
    // orthogonality; no sum/difference of distinct gammas is a root
    static GammaSystem build(FieldSpec fs);
};

// The four-dimensional span of {h_gamma : gamma in Gamma} as torus elements
// of the full algebra.  Verifies: dimension 4, total isotropy, maximality
// (the symplectic perp of the span is the span itself), and that each basis
// vector is toral (u^[2] in the span).
std::vector<ChevalleyAlgebra::Element> t0_basis(const GammaSystem& gs);

// x = sum lambda_i e_{gamma_i} + mu_i e_{-gamma_i}
struct RCircElement {
    std::array<fe, 8> lambda{};
    std::array<fe, 8> mu{};
};

// the open condition: lambda_i mu_i pairwise distinct and the 2-power tower
// x^{[2]}, ..., x^{[2]^4} spans a 4-dimensional space
bool in_r_circ(const GammaSystem& gs, const RCircElement& x);

// rejection sampling with the seeded generator; requires |field| >= 16
RCircElement sample_r_circ(const GammaSystem& gs, std::uint64_t seed);

std::vector<fe> r_to_module(const GammaSystem& gs, const RCircElement& x);
ChevalleyAlgebra::Element r_to_algebra(const GammaSystem& gs, const RCircElement& x);

// closed form of the iterated 2-power: x^{[2]^k} = sum (lambda_i mu_i)^{2^{k-1}} h_{gamma_i}
ChevalleyAlgebra::Element two_power_tower(const GammaSystem& gs, const RCircElement& x, int k);

// the closed form against the iterated Jacobson 2-power, for k = 1..kmax
bool check_tower_identity(const GammaSystem& gs, const RCircElement& x, int kmax);

struct CentralizerResult {
    std::size_t dim_full = 0;  // inside E8: expected 24 (torus + e_{+-gamma_i})
    std::size_t dim_d8 = 0;    // inside the D_8 subalgebra: expected 8 (torus)
    bool spans_match = false;  // kernels equal the predicted spans exactly
};
CentralizerResult centralizer_of_t0(const GammaSystem& gs);

// stabilizer of x in the 120-dimensional D_8 subalgebra, as rows of
// generator coordinates; verifies it equals the t0 span exactly
FieldMatrix infinitesimal_stab(const GammaSystem& gs, const RCircElement& x);

// w h with w a signed permutation of the epsilon-coordinates and h the torus
// point with gamma_i(h) = t[i]; acts by e_beta -> beta(h) e_{w(beta)}
struct MonomialElement {
    SignedPerm w;
    std::array<fe, 8> t;

    bool operator==(const MonomialElement&) const = default;
    bool is_identity() const;
};

// beta(h) for the torus point with gamma-values t: the square root of
// prod t_j^{(beta|gamma_j)} (unique in characteristic 2)
fe character_value(const GammaSystem& gs, const std::array<fe, 8>& t, const RootVec& beta);

std::vector<fe> apply_monomial(const GammaSystem& gs, const MonomialElement& m,
                               const std::vector<fe>& v);

MonomialElement compose(const GammaSystem& gs, const MonomialElement& a,
                        const MonomialElement& b);  // a after b

// the lift n0 = w0 (prod h_i) of -Id, with gamma-values mu_i / lambda_i
MonomialElement n0_element(const GammaSystem& gs, const RCircElement& x);

// Full stabilizer of x in N_G(T): pruned search over signed permutations
// preserving +-Gamma, then the unique torus point per Weyl part when one
// exists.  Verifies order 16, exponent 2, that n0 and the unique lifts of
// sigma_1 = (1,5)(2,6)(3,7)(4,8), sigma_2 = (1,4)(2,3)(5,8)(6,7),
// sigma_3 = (1,2)(3,4)(5,6)(7,8) are present, and that no element moves
// gamma_i to +-gamma_j with j != i.  Sorted output.
std::vector<MonomialElement> group_stab_enum(const GammaSystem& gs, const RCircElement& x);

// torus point h with gamma-values b_i = sqrt(lambda_i mu'_i / (lambda'_i mu_i));
// verifies it conjugates the stabilizer of x onto the stabilizer of x'
MonomialElement conjugate_witness(const GammaSystem& gs, const RCircElement& x,
                                  const RCircElement& xp);
// same, with the two stabilizers already enumerated
MonomialElement conjugate_witness(const GammaSystem& gs, const RCircElement& x,
                                  const RCircElement& xp,
                                  const std::vector<MonomialElement>& stab_x,
                                  const std::vector<MonomialElement>& stab_xp);

// SNF divisors of Z.Gamma inside Z.Phi: (1,1,1,1,2,2,2,2), the lattice
// content of the mu_2^4 scheme part
SnfResult mu2_part(const GammaSystem& gs);

nlohmann::json gamma_system_to_json(const GammaSystem& gs);

}  // namespace spinlie
