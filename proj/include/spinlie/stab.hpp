// stab.hpp -- infinitesimal stabilizer dimensions, fixed spaces, and seeded
// random searches certifying generic upper bounds by semicontinuity.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spinlie/rep.hpp"

#include "json.hpp"

namespace spinlie {

// --- seeded RNG ------------------------------------------------------------------
// Per-trial streams derive from (master seed, trial index) so trials are
// order-independent and reports reproducible.  The algorithm identifier is
// part of the report format.
extern const char* const kRngAlgorithm;  // "xoshiro256**/splitmix64-v1"

struct Xoshiro256ss {
    std::uint64_t s[4];

    static Xoshiro256ss for_trial(std::uint64_t master_seed, std::uint64_t trial);
    std::uint64_t next();
    // uniform in [0, bound) by rejection, bound >= 1
    std::uint64_t uniform(std::uint64_t bound);
};

std::vector<fe> random_vector(std::size_t dim, const Field& f, Xoshiro256ss& rng);

// --- stabilizer dimensions ---------------------------------------------------------

// column j is rho(generator_j) v; the kernel is the infinitesimal stabilizer
FieldMatrix action_matrix(const Representation& rep, const std::vector<fe>& v);
std::size_t stab_dim(const Representation& rep, const std::vector<fe>& v);

// dim ker(d rho(x)) for an algebra element (generator coordinates)
std::size_t fixed_space_dim(const Representation& rep, const Representation::Element& x);
// dim ker(g - 1) for an invertible group element
std::size_t group_fixed_dim(const FieldMatrix& g);

// --- search reports ---------------------------------------------------------------

struct StabilizerReport {
    std::string group;
    std::string rep;
    FieldSpec field;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::size_t min_dim = 0;
    std::map<std::size_t, std::uint64_t> histogram;  // dim -> count
    std::vector<fe> witness;
    std::uint64_t runtime_ms = 0;

    nlohmann::json to_json() const;
};

// Best-of-trials search; stops early once min_dim reaches `target` (if set).
// The best witness is re-verified before the report is returned.
StabilizerReport search_generic_stab(const Representation& rep, std::uint64_t trials,
                                     std::uint64_t seed, std::string group_name = "",
                                     std::optional<std::size_t> target = std::nullopt);

// --- target table -----------------------------------------------------------------

enum class RepKind { Spin, HalfSpin, Vector, VectorPlusHalfSpin };

const char* rep_kind_name(RepKind k);

struct Target {
    int n;                 // Spin_n / HSpin_n
    LatticeTag isogeny;    // SimplyConnected or HalfSpin
    RepKind rep;
    std::size_t expected_dim;
    std::string stabilizer_name;  // "G_2", "SL_6 x Z/2", ... when known

    std::string group_name() const;
};

// generic-stabilizer targets: the n = 6..14 table plus the dimension-zero
// case list (n = 15..20 variants)
std::vector<Target> standard_targets();

// the module for a target over the given field; odd n goes through the
// so_n construction inside D_{(n+1)/2}
Representation build_target_rep(int n, LatticeTag isogeny, RepKind kind, FieldSpec fs);

struct TargetResult {
    Target target;
    StabilizerReport report;
    FieldSpec certified_field;  // the ladder rung that met the target
    bool passed = false;
};

// Runs the search per target over GF(2), escalating GF(4) -> GF(16) while the
// target is missed.  Deterministic given the seed.
std::vector<TargetResult> verify_targets(const std::vector<Target>& targets,
                                         std::uint64_t trials, std::uint64_t seed);

nlohmann::json target_result_to_json(const TargetResult& r);

std::string base64_encode(const std::vector<fe>& bytes);
std::vector<fe> base64_decode(const std::string& text);

}  // namespace spinlie
