#include "spinlie/stab.hpp"

#include <chrono>
#include <stdexcept>

namespace spinlie {

const char* const kRngAlgorithm = "xoshiro256**/splitmix64-v1";

namespace {

std::uint64_t splitmix64(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Xoshiro256ss Xoshiro256ss::for_trial(std::uint64_t master_seed, std::uint64_t trial) {
    std::uint64_t sm = master_seed ^ ((trial + 1) * 0x9E3779B97F4A7C15ull);
    Xoshiro256ss r;
    for (auto& w : r.s) w = splitmix64(sm);
    return r;
}

std::uint64_t Xoshiro256ss::next() {
    std::uint64_t result = rotl(s[1] * 5, 7) * 9;
    std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rotl(s[3], 45);
    return result;
}

std::uint64_t Xoshiro256ss::uniform(std::uint64_t bound) {
    if (bound < 2) return 0;
    std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
    std::uint64_t v;
    do v = next();
    while (v > limit);
    return v % bound;
}

std::vector<fe> random_vector(std::size_t dim, const Field& f, Xoshiro256ss& rng) {
    std::vector<fe> v(dim);
    for (auto& c : v) c = fe(rng.uniform(f.order()));
    return v;
}

// --- stabilizer dimensions -----------------------------------------------------

FieldMatrix action_matrix(const Representation& rep, const std::vector<fe>& v) {
    const Field& f = rep.field();
    if (v.size() != rep.dim()) throw std::invalid_argument("action_matrix: vector length");
    FieldMatrix m(f, rep.dim(), rep.n_generators());
    for (std::size_t g = 0; g < rep.n_generators(); ++g) {
        auto img = rep.action(g).apply(v, f);
        for (std::size_t i = 0; i < rep.dim(); ++i)
            if (img[i]) m.set(i, g, img[i]);
    }
    return m;
}

std::size_t stab_dim(const Representation& rep, const std::vector<fe>& v) {
    return rep.n_generators() - rank(action_matrix(rep, v));
}

std::size_t fixed_space_dim(const Representation& rep, const Representation::Element& x) {
    return rep.dim() - rank(rep.rho(x));
}

std::size_t group_fixed_dim(const FieldMatrix& g) {
    if (g.rows() != g.cols()) throw std::invalid_argument("group_fixed_dim: square input");
    const Field& f = g.field();
    FieldMatrix m = g;
    for (std::size_t i = 0; i < g.rows(); ++i) m.set(i, i, f.sub(m.get(i, i), 1));
    if (determinant(g) == 0) throw std::domain_error("group_fixed_dim: singular element");
    return g.rows() - rank(m);
}

// --- base64 ------------------------------------------------------------------------

static const char* kB64 = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(const std::vector<fe>& bytes) {
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    for (std::size_t i = 0; i < bytes.size(); i += 3) {
        std::uint32_t acc = std::uint32_t(bytes[i]) << 16;
        int have = 1;
        if (i + 1 < bytes.size()) { acc |= std::uint32_t(bytes[i + 1]) << 8; have = 2; }
        if (i + 2 < bytes.size()) { acc |= bytes[i + 2]; have = 3; }
        out.push_back(kB64[(acc >> 18) & 63]);
        out.push_back(kB64[(acc >> 12) & 63]);
        out.push_back(have >= 2 ? kB64[(acc >> 6) & 63] : '=');
        out.push_back(have == 3 ? kB64[acc & 63] : '=');
    }
    return out;
}

std::vector<fe> base64_decode(const std::string& text) {
    auto val = [](char c) -> int {
        if (c >= 'A' && c <= 'Z') return c - 'A';
        if (c >= 'a' && c <= 'z') return c - 'a' + 26;
        if (c >= '0' && c <= '9') return c - '0' + 52;
        if (c == '+') return 62;
        if (c == '/') return 63;
        if (c == '=') return -1;
        throw std::invalid_argument("base64_decode: bad character");
    };
    if (text.size() % 4) throw std::invalid_argument("base64_decode: bad length");
    std::vector<fe> out;
    for (std::size_t i = 0; i < text.size(); i += 4) {
        int v[4];
        int pads = 0;
        for (int k = 0; k < 4; ++k) {
            v[k] = val(text[i + k]);
            if (v[k] < 0) { v[k] = 0; ++pads; }
        }
        std::uint32_t acc = (std::uint32_t(v[0]) << 18) | (std::uint32_t(v[1]) << 12) |
                            (std::uint32_t(v[2]) << 6) | std::uint32_t(v[3]);
        out.push_back(fe((acc >> 16) & 0xff));
        if (pads < 2) out.push_back(fe((acc >> 8) & 0xff));
        if (pads < 1) out.push_back(fe(acc & 0xff));
    }
    return out;
}

// --- search ----------------------------------------------------------------------

nlohmann::json StabilizerReport::to_json() const {
    return nlohmann::json{
        {"schema", "spinlie.stab-report/1"},
        {"group", group},
        {"rep", rep},
        {"field", field.name()},
        {"rng", {{"algorithm", kRngAlgorithm}, {"seed", seed}}},
        {"trials", trials},
        {"min_dim", min_dim},
        {"histogram", [&] {
             nlohmann::json h = nlohmann::json::object();
             for (auto& [d, c] : histogram) h[std::to_string(d)] = c;
             return h;
         }()},
        {"witness", base64_encode(witness)},
        {"runtime_ms", runtime_ms},
    };
}

StabilizerReport search_generic_stab(const Representation& rep, std::uint64_t trials,
                                     std::uint64_t seed, std::string group_name,
                                     std::optional<std::size_t> target) {
    if (trials < 1) throw std::invalid_argument("search_generic_stab: trials >= 1 required");
    auto t0 = std::chrono::steady_clock::now();
    StabilizerReport rpt;
    rpt.group = std::move(group_name);
    rpt.rep = rep.describe();
    rpt.field = rep.field().spec();
    rpt.seed = seed;
    rpt.min_dim = rep.n_generators() + 1;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Xoshiro256ss rng = Xoshiro256ss::for_trial(seed, t);
        std::vector<fe> v = random_vector(rep.dim(), rep.field(), rng);
        std::size_t d = stab_dim(rep, v);
        ++rpt.histogram[d];
        ++rpt.trials;
        if (d < rpt.min_dim) {
            rpt.min_dim = d;
            rpt.witness = std::move(v);
        }
        if (target && rpt.min_dim <= *target) break;
    }
    if (stab_dim(rep, rpt.witness) != rpt.min_dim)
        throw std::logic_error("search_generic_stab: witness failed re-verification");
    rpt.runtime_ms = std::uint64_t(std::chrono::duration_cast<std::chrono::milliseconds>(
                                       std::chrono::steady_clock::now() - t0)
                                       .count());
    return rpt;
}

// --- targets ----------------------------------------------------------------------

const char* rep_kind_name(RepKind k) {
    switch (k) {
        case RepKind::Spin: return "spin";
        case RepKind::HalfSpin: return "halfspin";
        case RepKind::Vector: return "vector";
        case RepKind::VectorPlusHalfSpin: return "vector+halfspin";
    }
    return "?";
}

std::string Target::group_name() const {
    return (isogeny == LatticeTag::HalfSpin ? "HSpin_" : "Spin_") + std::to_string(n);
}

std::vector<Target> standard_targets() {
    using LT = LatticeTag;
    using RK = RepKind;
    return {
        // generic stabilizer dimensions of the (half-)spin module, n = 6..14
        {6, LT::SimplyConnected, RK::HalfSpin, 11, "SL_3"},
        {7, LT::SimplyConnected, RK::Spin, 14, "G_2"},
        {8, LT::SimplyConnected, RK::HalfSpin, 21, "Spin_7"},
        {9, LT::SimplyConnected, RK::Spin, 21, "Spin_7"},
        {10, LT::SimplyConnected, RK::HalfSpin, 29, "(Spin_7)(G_a)^8"},
        {11, LT::SimplyConnected, RK::Spin, 24, "SL_5"},
        {12, LT::SimplyConnected, RK::HalfSpin, 35, "SL_6 x Z/2"},
        {13, LT::SimplyConnected, RK::Spin, 16, "(SL_3 x SL_3) x Z/2"},
        {14, LT::SimplyConnected, RK::Spin, 28, "G_2 x G_2"},
        // dimension-zero list
        {15, LT::SimplyConnected, RK::Spin, 0, "finite"},
        {16, LT::SimplyConnected, RK::VectorPlusHalfSpin, 0, "finite"},
        {17, LT::SimplyConnected, RK::Spin, 0, "finite"},
        {18, LT::SimplyConnected, RK::HalfSpin, 0, "finite"},
        {19, LT::SimplyConnected, RK::Spin, 0, "finite"},
        {20, LT::SimplyConnected, RK::VectorPlusHalfSpin, 0, "finite"},
        {20, LT::HalfSpin, RK::HalfSpin, 0, "finite"},
    };
}

Representation build_target_rep(int n, LatticeTag isogeny, RepKind kind, FieldSpec fs) {
    if (n < 6) throw std::invalid_argument("build_target_rep: n >= 6 required");
    if (n % 2) {
        if (kind != RepKind::Spin)
            throw std::invalid_argument("build_target_rep: odd n has only the spin module here");
        if (isogeny != LatticeTag::SimplyConnected)
            throw std::invalid_argument("build_target_rep: odd n is simply connected here");
        return b_type_spin((n + 1) / 2, fs).spin;
    }
    int r = n / 2;
    auto rs = std::make_shared<const RootSystem>(RootSystem::build(RSType::D, r));
    auto alg = std::make_shared<const ChevalleyAlgebra>(
        ChevalleyAlgebra::build(rs, CharacterLattice::make(*rs, isogeny), fs));
    switch (kind) {
        case RepKind::Spin:
        case RepKind::HalfSpin:
            return halfspin_rep(alg, 0);
        case RepKind::Vector:
            return vector_rep(alg);
        case RepKind::VectorPlusHalfSpin:
            return Representation::direct_sum(vector_rep(alg), halfspin_rep(alg, 0));
    }
    throw std::invalid_argument("build_target_rep: unknown representation kind");
}

std::vector<TargetResult> verify_targets(const std::vector<Target>& targets,
                                         std::uint64_t trials, std::uint64_t seed) {
    const FieldSpec ladder[] = {FieldSpec::prime(2), FieldSpec::gf2ext(2), FieldSpec::gf2ext(4)};
    std::vector<TargetResult> out;
    for (const auto& tgt : targets) {
        TargetResult res;
        res.target = tgt;
        for (const FieldSpec& fs : ladder) {
            Representation rep = build_target_rep(tgt.n, tgt.isogeny, tgt.rep, fs);
            res.report = search_generic_stab(rep, trials, seed, tgt.group_name(),
                                             tgt.expected_dim);
            res.certified_field = fs;
            if (res.report.min_dim == tgt.expected_dim) {
                res.passed = true;
                break;
            }
        }
        out.push_back(std::move(res));
    }
    return out;
}

nlohmann::json target_result_to_json(const TargetResult& r) {
    return nlohmann::json{
        {"group", r.target.group_name()},
        {"rep", rep_kind_name(r.target.rep)},
        {"expected_dim", r.target.expected_dim},
        {"stabilizer", r.target.stabilizer_name},
        {"passed", r.passed},
        {"certified_field", r.certified_field.name()},
        {"report", r.report.to_json()},
    };
}

}  // namespace spinlie
