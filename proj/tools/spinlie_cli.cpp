// spinlie -- command-line front end: stabilizer campaigns, fixed spaces,
// essential-dimension tables, the E8 appendix certificate, and the claim
// concordance.
//
// Exit codes: 0 target met / all checks pass, 1 target missed, 2 usage or
// build error.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spinlie/edim.hpp"
#include "spinlie/premet.hpp"
#include "spinlie/stab.hpp"

#include "CLI11.hpp"
#include "json.hpp"

using namespace spinlie;
namespace fs = std::filesystem;

namespace {

constexpr const char* kToolVersion = "spinlie 1.0.0";

// ---------------------------------------------------------------------------
// common plumbing

struct CommonOpts {
    int ch = 2;          // field characteristic
    int ext = 1;         // extension degree (characteristic 2 only)
    std::uint64_t trials = 64;
    std::uint64_t seed = 2024;  // fixed default: determinism, never clock entropy
    std::string json_path;      // "-" = stdout
    std::string cache_dir;
};

FieldSpec field_of(const CommonOpts& o) {
    if (o.ext > 1) {
        if (o.ch != 2) throw CLI::ValidationError("--field-ext requires --char 2");
        return FieldSpec::gf2ext(o.ext);
    }
    return FieldSpec::prime(o.ch);
}

// volatile keys have no place in a byte-reproducible report
void strip_volatile(nlohmann::json& j) {
    if (j.is_object()) {
        j.erase("runtime_ms");
        for (auto& [k, v] : j.items()) strip_volatile(v);
    } else if (j.is_array()) {
        for (auto& v : j) strip_volatile(v);
    }
}

nlohmann::json manifest(const std::string& command, nlohmann::json config) {
    return nlohmann::json{{"schema", "spinlie.manifest/1"},
                          {"tool", kToolVersion},
                          {"command", command},
                          {"rng", kRngAlgorithm},
                          {"config", std::move(config)}};
}

void emit_json(const std::string& path, nlohmann::json doc) {
    strip_volatile(doc);
    if (path == "-") {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << doc.dump(2) << "\n";
}

// representation cache: one file per (group, rep, field) plus a digest sidecar
Representation cached_target_rep(const CommonOpts& o, int n, LatticeTag isogeny, RepKind kind,
                                 FieldSpec fspec) {
    if (o.cache_dir.empty()) return build_target_rep(n, isogeny, kind, fspec);
    fs::create_directories(o.cache_dir);
    std::string stem = (isogeny == LatticeTag::HalfSpin ? "hspin" : "spin") + std::to_string(n) +
                       "_" + rep_kind_name(kind) + "_p" + std::to_string(fspec.p) + "e" +
                       std::to_string(fspec.e);
    fs::path bin = fs::path(o.cache_dir) / (stem + ".rep");
    fs::path sidecar = fs::path(o.cache_dir) / (stem + ".digest");
    if (fs::exists(bin) && fs::exists(sidecar)) {
        std::ifstream in(sidecar);
        std::uint64_t digest = 0;
        if (in >> digest) {
            try {
                // the algebra itself is cheap; only the module matrices are cached
                int r = n % 2 ? (n + 1) / 2 : n / 2;
                auto rs = std::make_shared<const RootSystem>(RootSystem::build(RSType::D, r));
                auto alg = std::make_shared<const ChevalleyAlgebra>(ChevalleyAlgebra::build(
                    rs, CharacterLattice::make(*rs, isogeny), fspec));
                return load_representation(alg, bin.string(), digest);
            } catch (const std::exception&) {
                // stale or corrupt cache entry: fall through and rebuild
            }
        }
    }
    Representation rep = build_target_rep(n, isogeny, kind, fspec);
    std::uint64_t digest = save_representation(rep, bin.string());
    std::ofstream(sidecar, std::ios::trunc) << digest << "\n";
    return rep;
}

RepKind parse_rep_kind(const std::string& s) {
    if (s == "spin") return RepKind::Spin;
    if (s == "halfspin" || s == "half-spin") return RepKind::HalfSpin;
    if (s == "vector") return RepKind::Vector;
    if (s == "vector+halfspin" || s == "vector+half-spin") return RepKind::VectorPlusHalfSpin;
    throw CLI::ValidationError("--rep must be spin, halfspin, vector or vector+halfspin");
}

// "spin14" / "hspin20"
std::pair<int, LatticeTag> parse_group(const std::string& s) {
    LatticeTag tag = LatticeTag::SimplyConnected;
    std::string rest = s;
    if (rest.rfind("hspin", 0) == 0) {
        tag = LatticeTag::HalfSpin;
        rest = rest.substr(5);
    } else if (rest.rfind("spin", 0) == 0) {
        rest = rest.substr(4);
    } else {
        throw CLI::ValidationError("--group must look like spin14 or hspin20");
    }
    try {
        return {std::stoi(rest), tag};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--group must look like spin14 or hspin20");
    }
}

// "2,2,2,2,1x8" -> {2,2,2,2,1,1,1,1,1,1,1,1}
std::vector<int> parse_partition(const std::string& text) {
    std::vector<int> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto x = tok.find('x');
        int value = std::stoi(x == std::string::npos ? tok : tok.substr(0, x));
        int count = x == std::string::npos ? 1 : std::stoi(tok.substr(x + 1));
        if (value < 1 || count < 1) throw CLI::ValidationError("bad partition token: " + tok);
        parts.insert(parts.end(), std::size_t(count), value);
    }
    if (parts.empty()) throw CLI::ValidationError("empty partition");
    return parts;
}

std::vector<long long> parse_int_list(const std::string& text) {
    std::vector<long long> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
    return out;
}

// coordinates of a parent-algebra element in the generator basis of a
// restricted module
std::vector<fe> sub_coords(const Representation& rep, const Representation::Element& x) {
    const Field& f = rep.field();
    FieldMatrix m(f, rep.algebra().dim(), rep.n_generators());
    for (std::size_t g = 0; g < rep.n_generators(); ++g)
        for (std::size_t i = 0; i < rep.algebra().dim(); ++i)
            if (rep.generator(g)[i]) m.set(i, g, rep.generator(g)[i]);
    auto sol = solve(m, x);
    if (!sol) throw std::runtime_error("element is not in the subalgebra span");
    return *sol;
}

std::string partition_str(const std::vector<int>& parts) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i)
        s += (i ? "," : "") + std::to_string(parts[i]);
    return s;
}

// ---------------------------------------------------------------------------
// stab

int cmd_stab(const CommonOpts& o, std::optional<int> n_opt, const std::string& group,
             const std::string& rep_name, std::optional<std::size_t> expect) {
    if (o.trials < 1) throw CLI::ValidationError("--trials must be at least 1");
    int n = 0;
    LatticeTag tag = LatticeTag::SimplyConnected;
    if (!group.empty()) {
        std::tie(n, tag) = parse_group(group);
    } else if (n_opt) {
        n = *n_opt;
    } else {
        throw CLI::ValidationError("stab needs --n or --group");
    }
    RepKind kind = parse_rep_kind(rep_name);
    FieldSpec fspec = field_of(o);

    // resolve the expected dimension from the built-in table when not given
    std::optional<std::size_t> target = expect;
    std::string stab_name;
    if (!target)
        for (const Target& t : standard_targets())
            if (t.n == n && t.isogeny == tag && t.rep == kind) {
                target = t.expected_dim;
                stab_name = t.stabilizer_name;
            }

    Representation rep = cached_target_rep(o, n, tag, kind, fspec);
    std::string gname = (tag == LatticeTag::HalfSpin ? "HSpin_" : "Spin_") + std::to_string(n);
    StabilizerReport rpt = search_generic_stab(rep, o.trials, o.seed, gname, target);

    bool met = !target || rpt.min_dim == *target;
    std::cout << gname << " " << rep_name << " over " << fspec.name() << ": min stabilizer dim "
              << rpt.min_dim << " in " << rpt.trials << " trials";
    if (target) std::cout << " (expected " << *target << (met ? ", met)" : ", MISSED)");
    if (!stab_name.empty() && met) std::cout << "  [" << stab_name << "]";
    std::cout << "\n";
    std::cerr << "runtime " << rpt.runtime_ms << " ms\n";

    if (!o.json_path.empty()) {
        nlohmann::json doc = manifest("stab", {{"n", n},
                                               {"group", gname},
                                               {"rep", rep_name},
                                               {"field", fspec.name()},
                                               {"trials", o.trials},
                                               {"seed", o.seed}});
        doc["report"] = rpt.to_json();
        doc["rep_digest"] = representation_digest(rep);
        doc["passed"] = met;
        emit_json(o.json_path, doc);
    }
    return met ? 0 : 1;
}

// ---------------------------------------------------------------------------
// spin-table

int cmd_spin_table(const CommonOpts& o, bool all) {
    if (o.trials < 1) throw CLI::ValidationError("--trials must be at least 1");
    std::vector<Target> targets = standard_targets();
    if (!all) {
        std::vector<Target> table1;
        for (const Target& t : targets)
            if (t.n <= 14) table1.push_back(t);
        targets = table1;
    }
    auto results = verify_targets(targets, o.trials, o.seed);
    bool ok = true;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : results) {
        ok = ok && r.passed;
        std::cout << r.target.group_name() << " " << rep_kind_name(r.target.rep) << ": min dim "
                  << r.report.min_dim << " (expected " << r.target.expected_dim << ") "
                  << (r.passed ? "ok" : "MISSED") << " over " << r.certified_field.name();
        if (!r.target.stabilizer_name.empty())
            std::cout << "  [" << r.target.stabilizer_name << "]";
        std::cout << "\n";
        rows.push_back(target_result_to_json(r));
    }
    std::cout << (ok ? "all targets met\n" : "some targets missed\n");
    if (!o.json_path.empty()) {
        nlohmann::json doc =
            manifest("spin-table", {{"trials", o.trials}, {"seed", o.seed}, {"all", all}});
        doc["targets"] = rows;
        doc["passed"] = ok;
        emit_json(o.json_path, doc);
    }
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// fixed-space

int cmd_fixed_space(const CommonOpts& o, int n, const std::string& partition,
                    const std::string& torus, long long modulus, bool want_max,
                    std::optional<std::size_t> expect) {
    if (n < 5) throw CLI::ValidationError("--n must be at least 5");
    int r = n % 2 ? (n + 1) / 2 : n / 2;

    std::size_t dim = 0;
    nlohmann::json detail;
    if (!partition.empty()) {
        FieldSpec fspec = field_of(o);
        if (fspec.p == 2) throw CLI::ValidationError("--partition needs odd characteristic");
        std::vector<int> parts = parse_partition(partition);
        int total = 0;
        for (int p : parts) total += p;
        if (total > n) throw CLI::ValidationError("partition exceeds n");
        while (total < n) {  // pad with 1-blocks
            parts.push_back(1);
            ++total;
        }

        std::vector<fe> xc;
        Representation module = [&] {
            if (n % 2) {
                BTypeResult bt = b_type_spin(r, fspec);
                auto x = nilpotent_from_partition(bt.vec, n, Partition(parts));
                xc = sub_coords(bt.spin, x);
                return bt.spin;
            }
            auto rs = std::make_shared<const RootSystem>(RootSystem::build(RSType::D, r));
            auto alg = std::make_shared<const ChevalleyAlgebra>(ChevalleyAlgebra::build(
                rs, CharacterLattice::make(*rs, LatticeTag::SimplyConnected), fspec));
            Representation vec = vector_rep(alg);
            auto x = nilpotent_from_partition(vec, n, Partition(parts));
            xc = x;
            return halfspin_rep(alg, 0);
        }();
        dim = fixed_space_dim(module, xc);
        Partition jt = jordan_type(module.rho(xc));
        std::cout << "so_" << n << " nilpotent (" << partition_str(parts) << ") on "
                  << module.describe() << ": dim fixed space " << dim << ", module Jordan type ("
                  << partition_str(jt.parts) << ")\n";
        detail = {{"n", n},
                  {"partition", parts},
                  {"field", fspec.name()},
                  {"module", module.describe()},
                  {"fixed_dim", dim},
                  {"module_jordan_type", jt.parts}};
    } else if (!torus.empty()) {
        // pure weight combinatorics: the module only contributes its weights
        ExponentVector ev{parse_int_list(torus), modulus};
        if (int(ev.c.size()) != r)
            throw CLI::ValidationError("--torus needs " + std::to_string(r) + " exponents");
        auto rs = std::make_shared<const RootSystem>(RootSystem::build(RSType::D, r));
        auto alg = std::make_shared<const ChevalleyAlgebra>(ChevalleyAlgebra::build(
            rs, CharacterLattice::make(*rs, LatticeTag::SimplyConnected), FieldSpec::prime(2)));
        Representation hs = halfspin_rep(alg, 0);
        std::vector<RootVec> weights = hs.weights();
        if (n % 2) {  // spin of so_{2r-1}: both half-spin weight parities
            auto odd = halfspin_rep(alg, 1).weights();
            weights.insert(weights.end(), odd.begin(), odd.end());
        }
        if (ev.m == 0) {  // large enough to rule out wraparound
            long long bound = 1;
            for (long long c : ev.c) bound += std::llabs(c);
            ev.m = 2 * bound;
        }
        dim = want_max ? torus_max_eigenspace(weights, ev) : torus_fixed_dim(weights, ev);
        std::cout << "Spin_" << n << " torus exponents (" << torus
                  << ") mod " << ev.m << ": " << (want_max ? "largest eigenspace " : "fixed space ")
                  << dim << "\n";
        detail = {{"n", n}, {"torus", ev.c}, {"modulus", ev.m}, {"max", want_max}, {"dim", dim}};
    } else {
        throw CLI::ValidationError("fixed-space needs --partition or --torus");
    }

    bool met = !expect || dim == *expect;
    if (expect && !met) std::cout << "expected " << *expect << ", MISSED\n";
    if (!o.json_path.empty()) {
        nlohmann::json doc = manifest("fixed-space", detail);
        doc["passed"] = met;
        emit_json(o.json_path, doc);
    }
    return met ? 0 : 1;
}

// ---------------------------------------------------------------------------
// eddim

int cmd_eddim(const std::string& range, bool csv, const std::string& json_path) {
    int lo = 0, hi = 0;
    auto sep = range.find("..");
    if (sep == std::string::npos) {
        lo = hi = std::stoi(range);
    } else {
        lo = std::stoi(range.substr(0, sep));
        hi = std::stoi(range.substr(sep + 2));
    }
    if (lo > hi) throw CLI::ValidationError("empty range");
    std::cout << (csv ? ed_table_csv(lo, hi) : ed_table_text(lo, hi));
    for (int n = lo; n <= hi; ++n)
        if (!ed_spin(n).in_formula_domain)
            std::cout << "note: n = " << n << " is outside the closed-form domain (n > 14); "
                      << "the listed value extends the formula formally\n";
    if (!json_path.empty()) {
        nlohmann::json rows = nlohmann::json::array();
        for (int n = lo; n <= hi; ++n) {
            auto s = ed_spin(n);
            nlohmann::json row{{"n", n},
                               {"ed_spin", s.value.str()},
                               {"branch", s.branch},
                               {"in_formula_domain", s.in_formula_domain}};
            if (n >= 20 && n % 4 == 0) row["ed_hspin"] = ed_hspin(n).value.str();
            rows.push_back(row);
        }
        nlohmann::json doc = manifest("eddim", {{"range", range}});
        doc["table"] = rows;
        emit_json(json_path, doc);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// e8-verify

int cmd_e8_verify(const CommonOpts& o, std::uint64_t samples) {
    if (samples < 1) throw CLI::ValidationError("--samples must be at least 1");
    FieldSpec fspec = o.ext > 1 ? FieldSpec::gf2ext(o.ext) : FieldSpec::gf2ext(5);
    auto t_start = std::chrono::steady_clock::now();

    nlohmann::json parts = nlohmann::json::array();
    bool all_ok = true;
    auto report = [&](const std::string& name, bool ok, const std::string& note = "") {
        all_ok = all_ok && ok;
        std::cout << (ok ? "PASS " : "FAIL ") << name;
        if (!note.empty()) std::cout << " -- " << note;
        std::cout << "\n";
        parts.push_back({{"check", name}, {"pass", ok}, {"note", note}});
    };

    GammaSystem gs = GammaSystem::build(fspec);  // throws if the Gamma invariants fail
    report("gamma system (H8 orthogonality, roots, pairings)", true, fspec.name());

    {
        bool ok = gs.m_divisors.size() == 8;
        for (int i = 0; ok && i < 8; ++i) ok = gs.m_divisors[i] == (i < 4 ? 1 : 2);
        report("pairing matrix M with elementary divisors 1^4 2^4", ok);
    }
    {
        bool ok = true;
        std::string note;
        try {
            t0_basis(gs);
        } catch (const std::exception& e) {
            ok = false;
            note = e.what();
        }
        report("t0: 4-dimensional maximal totally isotropic toral", ok, note);
    }
    {
        auto c = centralizer_of_t0(gs);
        report("centralizer of t0: 24-dim in E8, 8-dim torus in D_8",
               c.dim_full == 24 && c.dim_d8 == 8 && c.spans_match);
    }
    {
        auto snf = mu2_part(gs);
        bool ok = snf.divisors.size() == 8;
        for (int i = 0; ok && i < 8; ++i) ok = snf.divisors[i] == (i < 4 ? 1 : 2);
        report("scheme part: Z-span of Gamma has index 2^4 in the root lattice (mu_2^4)", ok);
    }

    bool tower_ok = true, inf_ok = true, grp_ok = true, conj_ok = true;
    std::vector<RCircElement> xs;
    std::vector<std::vector<MonomialElement>> stabs;
    nlohmann::json sample_rows = nlohmann::json::array();
    for (std::uint64_t s = 0; s < samples; ++s) {
        RCircElement x = sample_r_circ(gs, o.seed + s);
        tower_ok = tower_ok && check_tower_identity(gs, x, 8);
        nlohmann::json row{{"seed", o.seed + s}};
        try {
            row["inf_stab_dim"] = infinitesimal_stab(gs, x).rows();
        } catch (const std::exception& e) {
            inf_ok = false;
            row["inf_stab_error"] = e.what();
        }
        try {
            auto st = group_stab_enum(gs, x);
            row["group_stab_order"] = st.size();
            xs.push_back(x);
            stabs.push_back(std::move(st));
        } catch (const std::exception& e) {
            grp_ok = false;
            row["group_stab_error"] = e.what();
        }
        sample_rows.push_back(std::move(row));
    }
    for (std::size_t i = 1; i < xs.size(); ++i) {
        try {
            conjugate_witness(gs, xs[0], xs[i], stabs[0], stabs[i]);
        } catch (const std::exception&) {
            conj_ok = false;
        }
    }
    report("2-power tower identity, k = 1..8, all samples", tower_ok);
    report("infinitesimal stabilizer equals t0 for all samples", inf_ok,
           std::to_string(xs.size()) + " samples");
    report("group stabilizer: order 16, exponent 2, named lifts present", grp_ok);
    report("stabilizers pairwise conjugate by explicit torus witnesses",
           conj_ok && xs.size() == samples);

    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t_start)
                  .count();
    std::cerr << "runtime " << ms << " ms\n";

    if (!o.json_path.empty()) {
        nlohmann::json doc = manifest(
            "e8-verify", {{"field", fspec.name()}, {"seed", o.seed}, {"samples", samples}});
        doc["gamma_system"] = gamma_system_to_json(gs);
        doc["checks"] = parts;
        doc["samples"] = sample_rows;
        doc["passed"] = all_ok;
        emit_json(o.json_path, doc);
    }
    return all_ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// concordance

int cmd_concordance() {
    // claim id | statement checked | command that certifies it
    const char* rows[][3] = {
        {"table1-n6", "generic stabilizer of the Spin_6 half-spin module has dimension 11",
         "spinlie stab --n 6 --rep halfspin --char 2"},
        {"table1-n7", "generic stabilizer of the Spin_7 spin module has dimension 14 (type G_2)",
         "spinlie stab --n 7 --rep spin --char 2"},
        {"table1-n8", "generic stabilizer of the Spin_8 half-spin module has dimension 21",
         "spinlie stab --n 8 --rep halfspin --char 2"},
        {"table1-n9", "generic stabilizer of the Spin_9 spin module has dimension 21",
         "spinlie stab --n 9 --rep spin --char 2"},
        {"table1-n10", "generic stabilizer of the Spin_10 half-spin module has dimension 29",
         "spinlie stab --n 10 --rep halfspin --char 2"},
        {"table1-n11", "generic stabilizer of the Spin_11 spin module has dimension 24",
         "spinlie stab --n 11 --rep spin --char 2"},
        {"table1-n12", "generic stabilizer of the Spin_12 half-spin module has dimension 35",
         "spinlie stab --n 12 --rep halfspin --char 2"},
        {"table1-n13", "generic stabilizer of the Spin_13 spin module has dimension 16; note the "
                       "prose near Prop 8.2 reads as if the dimension bound were stated "
                       "differently from Table 1 -- the computation certifies the table value 16",
         "spinlie stab --n 13 --rep spin --char 2"},
        {"table1-n14", "generic stabilizer of the Spin_14 spin module has dimension 28 "
                       "(G_2 x G_2)",
         "spinlie stab --n 14 --rep spin --char 2"},
        {"sec5-spin15", "Spin_15 on the spin module: generic stabilizer dimension 0",
         "spinlie stab --n 15 --rep spin --char 2 --field-ext 4"},
        {"sec5-spin16", "Spin_16 on vector + half-spin: generic stabilizer dimension 0",
         "spinlie stab --n 16 --rep vector+halfspin --char 2 --field-ext 4"},
        {"sec5-spin17", "Spin_17 on the spin module: generic stabilizer dimension 0",
         "spinlie stab --n 17 --rep spin --char 2 --field-ext 4"},
        {"sec5-spin18", "Spin_18 on the half-spin module: generic stabilizer dimension 0",
         "spinlie stab --n 18 --rep halfspin --char 2 --field-ext 4"},
        {"sec5-spin19", "Spin_19 on the spin module: generic stabilizer dimension 0",
         "spinlie stab --n 19 --rep spin --char 2 --field-ext 4"},
        {"sec5-spin20", "Spin_20 on vector + half-spin: generic stabilizer dimension 0",
         "spinlie stab --n 20 --rep vector+halfspin --char 2 --field-ext 4"},
        {"sec5-hspin20", "HSpin_20 on the half-spin module: generic stabilizer dimension 0",
         "spinlie stab --group hspin20 --rep halfspin --char 2 --field-ext 4"},
        {"lem42-gf7", "over odd characteristic, HSpin_16 on half-spin has finite generic "
                      "stabilizer (Lie dimension 0)",
         "spinlie stab --group hspin16 --rep halfspin --char 7"},
        {"sec7-gf7", "over odd characteristic, Spin_14 generic stabilizer has dimension 28",
         "spinlie stab --n 14 --rep spin --char 7"},
        {"sec4-jordan1", "the so_9 nilpotent of vector type (2^4,1) acts on the spin module "
                         "with Jordan type (3,2^4,1^5)",
         "spinlie fixed-space --n 9 --partition 2x4,1 --char 7"},
        {"sec4-jordan2", "the so_9 nilpotent of vector type (2^2,1^5) acts on the spin module "
                         "with Jordan type (2^4,1^8)",
         "spinlie fixed-space --n 9 --partition 2x2,1x5 --char 7"},
        {"sec4-160", "the so_18 nilpotent of vector type (2^4,1^10) fixes a 160-dimensional "
                     "subspace of the half-spin module",
         "spinlie fixed-space --n 18 --partition 2x4,1x10 --char 7"},
        {"sec4-torus6", "the largest eigenspace of the rank-5 torus element with exponents "
                        "(1,1,1,1,0) on the Spin_10 half-spin module has dimension 6",
         "spinlie fixed-space --n 10 --torus 1,1,1,1,0 --max"},
        {"cor13-table", "ed(Spin_n) for n = 15..20 equals 23, 24, 120, 103, 341, 326",
         "spinlie eddim 15..20"},
        {"thmA1", "E8 appendix: generic stabilizer (Z/2)^4 x mu_2^4 on the 128-dimensional "
                  "half-spin restriction, parts (i)-(iv)",
         "spinlie e8-verify --seed 2024"},
    };
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, std::string(r[0]).size());
    for (const auto& r : rows)
        std::cout << r[0] << std::string(width - std::string(r[0]).size() + 2, ' ') << r[1]
                  << "\n" << std::string(width + 2, ' ') << "$ " << r[2] << "\n";
    std::cout << "(" << std::size(rows) << " claims)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computational certification of spin-group generic stabilizers"};
    app.set_config("--config", "", "key=value configuration file; flags override");
    app.require_subcommand(1);

    CommonOpts o;
    std::optional<int> n_opt;
    std::string group, rep_name = "halfspin";
    std::optional<std::size_t> expect;

    auto add_common = [&](CLI::App* c, bool sampling) {
        c->add_option("--char", o.ch, "field characteristic")->capture_default_str();
        c->add_option("--field-ext", o.ext, "extension degree over GF(2)")->capture_default_str();
        c->add_option("--json", o.json_path, "write a JSON report here ('-' for stdout)");
        c->add_option("--cache-dir", o.cache_dir, "representation cache directory");
        if (sampling) {
            c->add_option("--trials", o.trials, "random trials per target")
                ->capture_default_str();
            c->add_option("--seed", o.seed, "master RNG seed")->capture_default_str();
        }
    };

    CLI::App* stab = app.add_subcommand("stab", "generic stabilizer dimension search");
    stab->add_option("--n", n_opt, "Spin_n");
    stab->add_option("--group", group, "group name, e.g. spin14 or hspin20");
    stab->add_option("--rep", rep_name, "spin | halfspin | vector | vector+halfspin")
        ->capture_default_str();
    stab->add_option("--expect", expect, "override the expected dimension");
    add_common(stab, true);

    CLI::App* table = app.add_subcommand("spin-table", "run the full n = 6..14 campaign");
    bool all_targets = false;
    table->add_flag("--all", all_targets, "include the dimension-zero cases n = 15..20");
    add_common(table, true);

    CLI::App* fixed = app.add_subcommand("fixed-space", "fixed spaces of explicit elements");
    int fx_n = 0;
    std::string partition, torus;
    long long modulus = 0;
    bool want_max = false;
    fixed->add_option("--n", fx_n, "so_n / Spin_n")->required();
    fixed->add_option("--partition", partition, "nilpotent vector-rep Jordan type, e.g. 2x4,1");
    fixed->add_option("--torus", torus, "torus eigenvalue exponents, comma separated");
    fixed->add_option("--m", modulus, "exponent modulus (0 = no wraparound)");
    fixed->add_flag("--max", want_max, "largest eigenspace instead of the fixed space");
    fixed->add_option("--expect", expect, "expected dimension (sets the exit code)");
    add_common(fixed, false);

    CLI::App* eddim = app.add_subcommand("eddim", "essential dimension table");
    std::string range = "15..20";
    bool csv = false;
    eddim->add_option("range", range, "n range, e.g. 15..20")->capture_default_str();
    eddim->add_flag("--csv", csv, "CSV output");
    eddim->add_option("--json", o.json_path, "write a JSON report here ('-' for stdout)");

    CLI::App* e8 = app.add_subcommand("e8-verify", "appendix certificate (E8, characteristic 2)");
    std::uint64_t samples = 20;
    e8->add_option("--samples", samples, "number of generic elements")->capture_default_str();
    add_common(e8, true);

    app.add_subcommand("concordance", "list certified claims and their commands");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit 0, usage errors exit 2
    }

    try {
        if (stab->parsed()) return cmd_stab(o, n_opt, group, rep_name, expect);
        if (table->parsed()) return cmd_spin_table(o, all_targets);
        if (fixed->parsed()) {
            if (fixed->count("--char") == 0 && !partition.empty()) o.ch = 7;
            return cmd_fixed_space(o, fx_n, partition, torus, modulus, want_max, expect);
        }
        if (eddim->parsed()) return cmd_eddim(range, csv, o.json_path);
        if (e8->parsed()) return cmd_e8_verify(o, samples);
        return cmd_concordance();
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
