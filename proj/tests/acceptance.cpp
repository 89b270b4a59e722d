// acceptance -- end-to-end certification run: one PASS/FAIL line per criterion.
// Exit code is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "spinlie/edim.hpp"
#include "spinlie/premet.hpp"
#include "spinlie/stab.hpp"

using namespace spinlie;

namespace {

int failures = 0;

void line(int id, const std::string& what, bool ok, long ms, const std::string& note = "") {
    if (!ok) ++failures;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << id << ". " << what << " (" << ms << " ms)";
    if (!note.empty()) std::cout << " -- " << note;
    std::cout << "\n" << std::flush;
}

template <class F>
void criterion(int id, const std::string& what, long budget_ms, F&& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
        ok = body(note);
    } catch (const std::exception& e) {
        note = e.what();
    }
    long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    if (ok && ms > budget_ms) {
        ok = false;
        note = "over time budget of " + std::to_string(budget_ms) + " ms";
    }
    line(id, what, ok, ms, note);
}

std::shared_ptr<const ChevalleyAlgebra> make_alg(RSType t, int r, LatticeTag tag, FieldSpec fs) {
    auto rs = std::make_shared<const RootSystem>(RootSystem::build(t, r));
    return std::make_shared<const ChevalleyAlgebra>(
        ChevalleyAlgebra::build(rs, CharacterLattice::make(*rs, tag), fs));
}

std::vector<fe> sub_coords(const Representation& rep, const Representation::Element& x) {
    const Field& f = rep.field();
    FieldMatrix m(f, rep.algebra().dim(), rep.n_generators());
    for (std::size_t g = 0; g < rep.n_generators(); ++g)
        for (std::size_t i = 0; i < rep.algebra().dim(); ++i)
            if (rep.generator(g)[i]) m.set(i, g, rep.generator(g)[i]);
    auto sol = solve(m, x);
    if (!sol) throw std::runtime_error("element not in subalgebra span");
    return *sol;
}

std::vector<int> repeat_parts(int copies, std::vector<int> shape) {
    // `copies` copies of `shape`, merged and sorted decreasingly
    std::vector<int> out;
    for (int c = 0; c < copies; ++c) out.insert(out.end(), shape.begin(), shape.end());
    std::sort(out.rbegin(), out.rend());
    return out;
}

}  // namespace

int main() {
    // 1. essential dimension table
    criterion(1, "ed(Spin_n) for n = 15..20 is 23, 24, 120, 103, 341, 326", 1000, [](auto&) {
        const long expected[] = {23, 24, 120, 103, 341, 326};
        auto t0 = std::chrono::steady_clock::now();
        for (int n = 15; n <= 20; ++n)
            if (ed_spin(n).value != expected[n - 15]) return false;
        auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        return us < 1000;  // < 1 ms for the table itself
    });

    // 2. the seven dimension-zero cases
    criterion(2, "generically trivial stabilizers: Spin_15/17/19 spin, Spin_18 half-spin, "
                 "Spin_16/20 vector+half-spin, HSpin_20 half-spin",
              120000, [](auto& note) {
                  std::vector<Target> zeros;
                  for (const Target& t : standard_targets())
                      if (t.expected_dim == 0) zeros.push_back(t);
                  if (zeros.size() != 7) return false;
                  for (const auto& r : verify_targets(zeros, 64, 2024)) {
                      if (!r.passed || r.report.min_dim != 0) {
                          note = r.target.group_name() + " missed";
                          return false;
                      }
                      // re-verify the witness independently of the search
                      Representation rep = build_target_rep(r.target.n, r.target.isogeny,
                                                            r.target.rep, r.certified_field);
                      if (stab_dim(rep, r.report.witness) != 0) {
                          note = r.target.group_name() + " witness failed re-verification";
                          return false;
                      }
                  }
                  return true;
              });

    // 3. the n = 6..14 table
    criterion(3, "minimum stabilizer dimensions 11, 14, 21, 21, 29, 24, 35, 16, 28 "
                 "for n = 6..14 in characteristic 2",
              30000, [](auto& note) {
                  const std::size_t expected[] = {11, 14, 21, 21, 29, 24, 35, 16, 28};
                  std::vector<Target> table;
                  for (const Target& t : standard_targets())
                      if (t.n <= 14) table.push_back(t);
                  if (table.size() != 9) return false;
                  auto results = verify_targets(table, 64, 2024);
                  for (std::size_t i = 0; i < results.size(); ++i)
                      if (!results[i].passed || results[i].report.min_dim != expected[i]) {
                          note = results[i].target.group_name() + " missed";
                          return false;
                      }
                  return true;
              });

    // 4. odd characteristic spot checks
    criterion(4, "over GF(7): HSpin_16 half-spin stabilizer dimension 0, "
                 "Spin_14 spin stabilizer dimension 28",
              10000, [](auto&) {
                  Representation h16 = build_target_rep(16, LatticeTag::HalfSpin,
                                                        RepKind::HalfSpin, FieldSpec::prime(7));
                  auto a = search_generic_stab(h16, 64, 2024, "HSpin_16", 0);
                  Representation s14 = build_target_rep(14, LatticeTag::SimplyConnected,
                                                        RepKind::Spin, FieldSpec::prime(7));
                  auto b = search_generic_stab(s14, 64, 2024, "Spin_14", 28);
                  return a.min_dim == 0 && b.min_dim == 28;
              });

    // 5. Jordan types and the 160-dimensional fixed space
    criterion(5, "spin Jordan types (3,2^4,1^5) and (2^4,1^8) on so_9; "
                 "dim V^x = 160 for (2^4,1^10) on so_18",
              5000, [](auto&) {
                  BTypeResult bt = b_type_spin(5, FieldSpec::prime(7));
                  auto x1 = nilpotent_from_partition(bt.vec, 9, Partition({2, 2, 2, 2, 1}));
                  if (jordan_type(bt.spin.rho(sub_coords(bt.spin, x1))).parts !=
                      std::vector<int>{3, 2, 2, 2, 2, 1, 1, 1, 1, 1})
                      return false;
                  auto x2 = nilpotent_from_partition(bt.vec, 9,
                                                     Partition({2, 2, 1, 1, 1, 1, 1}));
                  if (jordan_type(bt.spin.rho(sub_coords(bt.spin, x2))).parts !=
                      std::vector<int>(
                          {2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1}))
                      return false;

                  auto alg = make_alg(RSType::D, 9, LatticeTag::SimplyConnected,
                                      FieldSpec::prime(7));
                  Representation vec = vector_rep(alg);
                  Representation hs = halfspin_rep(alg, 0);
                  auto y = nilpotent_from_partition(
                      vec, 18, Partition({2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}));
                  if (fixed_space_dim(hs, y) != 160) return false;
                  // the 256-dimensional half-spin splits into 16 copies of (3,2^4,1^5)
                  return jordan_type(hs.rho(y)).parts ==
                         repeat_parts(16, {3, 2, 2, 2, 2, 1, 1, 1, 1, 1});
              });

    // 6. property suites
    criterion(6, "bounds and identities: 3/4 fixed-space bound, 5/8 semisimple bound, "
                 "Jacobson, restrictedness, Jacobi",
              120000, [](auto& note) {
                  // dim V^x <= 3/4 dim V for 200 noncentral x per rank over GF(7)
                  for (int r = 4; r <= 7; ++r) {
                      auto alg = make_alg(RSType::D, r, LatticeTag::SimplyConnected,
                                          FieldSpec::prime(7));
                      Representation spin = Representation::direct_sum(halfspin_rep(alg, 0),
                                                                       halfspin_rep(alg, 1));
                      int checked = 0;
                      for (std::uint64_t t = 0; checked < 200; ++t) {
                          if (t > 1000) return false;  // far too many central samples
                          auto rng = Xoshiro256ss::for_trial(606, (std::uint64_t(r) << 32) | t);
                          auto x = random_vector(alg->dim(), alg->field(), rng);
                          if (alg->ad_matrix(x).is_zero()) continue;
                          ++checked;
                          if (4 * fixed_space_dim(spin, x) > 3 * spin.dim()) {
                              note = "3/4 bound violated at rank " + std::to_string(r);
                              return false;
                          }
                      }
                  }
                  // semisimple 5/8 bound, exhaustive over order-2 and order-3 exponent
                  // vectors on D_5..D_7
                  for (int r = 5; r <= 7; ++r) {
                      auto rs = RootSystem::build(RSType::D, r);
                      auto alg = make_alg(RSType::D, r, LatticeTag::SimplyConnected,
                                          FieldSpec::prime(2));
                      auto weights = halfspin_rep(alg, 0).weights();
                      auto odd = halfspin_rep(alg, 1).weights();
                      weights.insert(weights.end(), odd.begin(), odd.end());
                      for (long long m : {2, 3}) {
                          std::vector<long long> c(r, 0);
                          while (true) {
                              ExponentVector ev{c, m};
                              if (torus_noncentral(rs, ev) &&
                                  8 * torus_max_eigenspace(weights, ev) > 5 * weights.size()) {
                                  note = "5/8 bound violated at rank " + std::to_string(r);
                                  return false;
                              }
                              int k = 0;
                              while (k < r && ++c[k] == m) c[k++] = 0;
                              if (k == r) break;
                          }
                      }
                  }
                  // Jacobson 2-power, restrictedness, Jacobi
                  {
                      auto alg = make_alg(RSType::D, 5, LatticeTag::SimplyConnected,
                                          FieldSpec::prime(2));
                      Representation hs = halfspin_rep(alg, 0);
                      const Field& f = alg->field();
                      for (int t = 0; t < 25; ++t) {
                          auto rng = Xoshiro256ss::for_trial(607, std::uint64_t(t));
                          auto x = random_vector(alg->dim(), f, rng);
                          auto y = random_vector(alg->dim(), f, rng);
                          // (x+y)^[2] = x^[2] + y^[2] + [x,y]
                          auto s = x;
                          for (std::size_t i = 0; i < s.size(); ++i) s[i] = f.add(s[i], y[i]);
                          auto lhs = alg->p_power(s);
                          auto rhs = alg->p_power(x);
                          auto yy = alg->p_power(y);
                          auto br = alg->bracket(x, y);
                          for (std::size_t i = 0; i < rhs.size(); ++i)
                              rhs[i] = f.add(f.add(rhs[i], yy[i]), br[i]);
                          if (lhs != rhs) {
                              note = "Jacobson identity violated";
                              return false;
                          }
                          if (!(hs.rho(x).mul(hs.rho(x)) == hs.rho(alg->p_power(x)))) {
                              note = "restrictedness violated";
                              return false;
                          }
                      }
                  }
                  {
                      auto alg = make_alg(RSType::D, 4, LatticeTag::SimplyConnected,
                                          FieldSpec::prime(7));
                      const Field& f = alg->field();
                      for (int t = 0; t < 25; ++t) {
                          auto rng = Xoshiro256ss::for_trial(608, std::uint64_t(t));
                          auto x = random_vector(alg->dim(), f, rng);
                          auto y = random_vector(alg->dim(), f, rng);
                          auto z = random_vector(alg->dim(), f, rng);
                          auto j1 = alg->bracket(x, alg->bracket(y, z));
                          auto j2 = alg->bracket(y, alg->bracket(z, x));
                          auto j3 = alg->bracket(z, alg->bracket(x, y));
                          for (std::size_t i = 0; i < j1.size(); ++i)
                              if (f.add(f.add(j1[i], j2[i]), j3[i]) != 0) {
                                  note = "Jacobi identity violated";
                                  return false;
                              }
                      }
                  }
                  return true;
              });

    // 7. the E8 appendix certificate
    criterion(7, "E8 appendix: M, divisors 1^4 2^4, t0, 2-power tower, and for 20 generic x "
                 "over GF(32): stabilizers t0 / (Z/2)^4, pairwise conjugate",
              60000, [](auto& note) {
                  GammaSystem gs = GammaSystem::build(FieldSpec::gf2ext(5));
                  const int expected_m[8][8] = {
                      {-1, 1, 0, 0, 0, 0, 0, 0}, {0, 0, -1, 1, -1, 1, -1, 1},
                      {0, 1, 0, -1, 0, 1, 0, -1}, {1, 0, -1, 0, 1, 0, -1, 0},
                      {0, 1, 0, 0, 0, -1, 0, 0},  {1, 0, -1, 1, -1, 0, 1, -1},
                      {1, 1, 0, -1, 0, 0, 0, 1},  {0, 0, -1, 0, 1, -1, 1, 0}};
                  for (int i = 0; i < 8; ++i)
                      for (int j = 0; j < 8; ++j)
                          if (gs.m.get(i, j) != expected_m[i][j]) {
                              note = "matrix M mismatch";
                              return false;
                          }
                  for (int i = 0; i < 8; ++i)
                      if (gs.m_divisors[i] != (i < 4 ? 1 : 2) ||
                          mu2_part(gs).divisors[i] != (i < 4 ? 1 : 2)) {
                          note = "elementary divisors mismatch";
                          return false;
                      }
                  if (t0_basis(gs).size() != 4) return false;
                  auto c = centralizer_of_t0(gs);
                  if (c.dim_full != 24 || c.dim_d8 != 8 || !c.spans_match) {
                      note = "centralizer of t0 mismatch";
                      return false;
                  }
                  std::vector<RCircElement> xs;
                  std::vector<std::vector<MonomialElement>> stabs;
                  for (std::uint64_t s = 0; s < 20; ++s) {
                      RCircElement x = sample_r_circ(gs, 5000 + s);
                      if (!check_tower_identity(gs, x, 8)) {
                          note = "2-power tower mismatch";
                          return false;
                      }
                      infinitesimal_stab(gs, x);  // throws unless exactly t0
                      stabs.push_back(group_stab_enum(gs, x));  // throws unless (Z/2)^4
                      xs.push_back(x);
                  }
                  for (std::size_t i = 0; i < xs.size(); ++i)
                      for (std::size_t j = i + 1; j < xs.size(); ++j)
                          conjugate_witness(gs, xs[i], xs[j], stabs[i], stabs[j]);
                  return true;
              });

    // 8. byte-for-byte reproducibility
    criterion(8, "identical manifests produce byte-identical JSON reports", 60000, [](auto&) {
        Representation rep = build_target_rep(12, LatticeTag::SimplyConnected, RepKind::HalfSpin,
                                              FieldSpec::prime(2));
        auto j1 = search_generic_stab(rep, 32, 99, "Spin_12").to_json();
        auto j2 = search_generic_stab(rep, 32, 99, "Spin_12").to_json();
        j1.erase("runtime_ms");
        j2.erase("runtime_ms");
        if (j1.dump() != j2.dump()) return false;
        auto g1 = gamma_system_to_json(GammaSystem::build(FieldSpec::gf2ext(5)));
        auto g2 = gamma_system_to_json(GammaSystem::build(FieldSpec::gf2ext(5)));
        return g1.dump() == g2.dump();
    });

    std::cout << (failures ? "ACCEPTANCE: FAILED (" + std::to_string(failures) + ")"
                           : std::string("ACCEPTANCE: ALL CRITERIA PASSED"))
              << "\n";
    return failures;
}
