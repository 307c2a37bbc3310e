#pragma once

#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rightjump/asymptotics.hpp"
#include "rightjump/basis.hpp"
#include "rightjump/congruence.hpp"
#include "rightjump/distribution.hpp"
#include "rightjump/jumps.hpp"
#include "rightjump/sequences.hpp"
#include "rightjump/triangle.hpp"

namespace rightjump {

struct CheckResult {
  std::string name;
  bool pass = false;
  bool slow = false;
  std::string detail;
  double seconds = 0.0;
};

namespace verifydata {

struct TriangleCell {
  int n, p;
  long value;
};

// The reference triangle rows for 2 <= n <= 11, entry-complete per row.
inline const std::vector<TriangleCell>& reference_cells() {
  static const std::vector<TriangleCell> cells = {
      {2, 0, 1},       {3, 1, 2},       {4, 1, 1},       {4, 2, 6},       {5, 2, 8},
      {5, 3, 24},      {6, 2, 1},       {6, 3, 58},      {6, 4, 120},     {7, 3, 18},
      {7, 4, 444},     {7, 5, 720},     {8, 3, 1},       {8, 4, 244},     {8, 5, 3708},
      {8, 6, 5040},    {9, 4, 32},      {9, 5, 3104},    {9, 6, 33984},   {9, 7, 40320},
      {10, 4, 1},      {10, 5, 700},    {10, 6, 39708},  {10, 7, 341136}, {10, 8, 362880},
      {11, 5, 50},     {11, 6, 13400},  {11, 7, 525240}, {11, 8, 3733920},
      {11, 9, 3628800}};
  return cells;
}

// Reference column aggregates as printed: correct for p <= 4; the p=5,6
// values are truncations (see the beta-aggregate check).
inline const std::vector<long>& reference_beta() {
  static const std::vector<long> beta = {1, 3, 15, 101, 841, 8232, 78732};
  return beta;
}

inline const std::vector<std::string>& basis_p2_lines() {
  static const std::vector<std::string> lines = {
      "4 1 2 3",     "4 1 3 2",   "4 2 1 3",   "4 2 3 1",   "4 3 1 2",
      "4 3 2 1",     "2 1 5 3 4", "2 1 5 4 3", "3 1 2 5 4", "3 1 5 2 4",
      "3 1 5 4 2",   "3 2 1 5 4", "3 2 5 1 4", "3 2 5 4 1", "2 1 4 3 6 5"};
  return lines;
}

}  // namespace verifydata

namespace detail {

inline std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

inline bool check_basis_sets(std::string& d) {
  const std::vector<std::vector<std::string>> expected = {
      {"2 1"}, {"3 1 2", "3 2 1", "2 1 4 3"}, verifydata::basis_p2_lines()};
  for (int p = 0; p <= 2; ++p) {
    const auto got = enumerate_basis_for_p(p);
    const auto& want = expected[static_cast<size_t>(p)];
    if (got.size() != want.size()) {
      d = "basis set size mismatch at p=" + std::to_string(p);
      return false;
    }
    for (size_t i = 0; i < got.size(); ++i) {
      if (format_permutation(got[i]) != want[i]) {
        d = "basis element mismatch at p=" + std::to_string(p) + " index " + std::to_string(i);
        return false;
      }
    }
  }
  d = "basis sets for p=0,1,2 match all 1+3+15 expected elements";
  return true;
}

inline bool check_recognizer_equivalence(std::string& d, int max_n) {
  long long tested = 0;
  for (int n = 2; n <= max_n; ++n) {
    std::vector<int> v(static_cast<size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    do {
      const Permutation sigma = Permutation::unchecked(v);
      const BasisMembership fast = check_basis(sigma);
      const BasisMembership slow = check_basis_oracle(sigma);
      ++tested;
      if (fast.is_member != slow.is_member || fast.p != slow.p) {
        d = "recognizers disagree on " + format_permutation(sigma);
        return false;
      }
    } while (std::next_permutation(v.begin(), v.end()));
  }
  d = "direct recognizer agrees with the deletion oracle on " + std::to_string(tested) +
      " permutations (n <= " + std::to_string(max_n) + ")";
  return true;
}

inline bool check_distance_bfs(std::string& d) {
  for (int n = 2; n <= 6; ++n) {
    const auto layers = jump_bfs_layers(n);
    const Permutation id = Permutation::identity(n);
    for (size_t dist = 0; dist < layers.size(); ++dist)
      for (const Permutation& sigma : layers[dist])
        if (jump_distance(id, sigma) != static_cast<int>(dist)) {
          d = "distance mismatch at n=" + std::to_string(n);
          return false;
        }
  }
  const auto layers7 = jump_bfs_layers(7);
  const std::vector<size_t> want = {1, 21, 175, 735, 1624, 1764, 720};
  std::vector<size_t> got;
  for (const auto& layer : layers7) got.push_back(layer.size());
  if (got != want) {
    d = "n=7 layer sizes do not match 1,21,175,735,1624,1764,720";
    return false;
  }
  const auto srow = stirling_row(7);
  for (size_t p = 0; p < want.size(); ++p)
    if (srow[p] != static_cast<long>(want[p])) {
      d = "Stirling closed form disagrees with layer sizes at p=" + std::to_string(p);
      return false;
    }
  d = "BFS distances match the non-maxima statistic (n <= 6); n=7 layers match the "
      "Stirling row 1,21,175,735,1624,1764,720";
  return true;
}

inline bool check_witness_replay(std::string& d) {
  std::vector<int> v = {1, 2, 3, 4, 5, 6};
  do {
    const Permutation sigma = Permutation::unchecked(v);
    const auto jumps = witness_jumps(sigma);
    if (static_cast<int>(jumps.size()) != non_ltr_count(sigma) ||
        !(replay_jumps(6, jumps) == sigma)) {
      d = "witness replay failed for " + format_permutation(sigma);
      return false;
    }
  } while (std::next_permutation(v.begin(), v.end()));
  d = "witness jump sequences replay to every element of S_6 with minimal length";
  return true;
}

inline bool check_class_avoidance(std::string& d) {
  for (int p = 0; p <= 2; ++p) {
    const auto basis = enumerate_basis_for_p(p);
    for (int n = 2; n <= 7; ++n) {
      const std::set<Permutation> reachable = reachable_set(n, p);
      std::vector<int> v(static_cast<size_t>(n));
      std::iota(v.begin(), v.end(), 1);
      do {
        const Permutation sigma = Permutation::unchecked(v);
        bool avoids = true;
        for (const Permutation& pat : basis)
          if (contains_pattern(sigma, pat)) {
            avoids = false;
            break;
          }
        if (avoids != (reachable.count(sigma) > 0)) {
          d = "avoidance class mismatch at n=" + std::to_string(n) + ", p=" + std::to_string(p) +
              ": " + format_permutation(sigma);
          return false;
        }
      } while (std::next_permutation(v.begin(), v.end()));
    }
  }
  d = "reachable sets equal the pattern-avoidance classes for n <= 7, p <= 2";
  return true;
}

inline bool check_triangle_dual(std::string& d) {
  const Triangle conv = build_triangle_convolution(60);
  const Triangle ode = build_triangle_ode(60);
  if (!(conv == ode)) {
    d = "convolution and ODE triangles disagree within n <= 60";
    return false;
  }
  const auto b = b_sequence(200);
  const Triangle big = build_triangle_ode(200);
  for (int n = 2; n <= 200; ++n)
    if (big.row_sum(n) != b[static_cast<size_t>(n)]) {
      d = "row sum disagrees with the two-term recurrence at n=" + std::to_string(n);
      return false;
    }
  d = "triangle builders agree bit-exact to n=60; row sums match the two-term recurrence "
      "to n=200";
  return true;
}

inline bool check_reference_cells(std::string& d) {
  const Triangle t = build_triangle(11);
  long long covered = 0;
  for (const auto& c : verifydata::reference_cells()) {
    if (t.at(c.n, c.p) != c.value) {
      d = "triangle cell (" + std::to_string(c.n) + "," + std::to_string(c.p) +
          ") does not match the reference value " + std::to_string(c.value);
      return false;
    }
    ++covered;
  }
  if (t.row_sum(10) != 744425 || t.row_sum(11) != 7901410) {
    d = "row sums for n=10,11 do not match 744425, 7901410";
    return false;
  }
  for (int p = 0; p <= 4; ++p)
    if (beta(p, t) != verifydata::reference_beta()[static_cast<size_t>(p)]) {
      d = "column aggregate mismatch at p=" + std::to_string(p);
      return false;
    }
  d = "all " + std::to_string(covered) +
      " reference cells, the n=10,11 row sums, and the p <= 4 column aggregates match";
  return true;
}

inline bool check_beta_aggregates(std::string& d) {
  const Triangle t = build_triangle(14);
  const Int full5 = beta(5, t), full6 = beta(6, t);
  Int trunc5 = 0, trunc6 = 0;
  for (int n = 7; n <= 10; ++n) trunc5 += t.at(n, 5);
  for (int n = 8; n <= 10; ++n) trunc6 += t.at(n, 6);
  if (full5 != 8283 || full6 != 93815) {
    d = "full-band column sums for p=5,6 are not 8283, 93815";
    return false;
  }
  if (trunc5 != 8232 || trunc6 != 78732) {
    d = "truncated column sums for p=5,6 are not 8232, 78732";
    return false;
  }
  d = "reference aggregates for p=5,6 (8232, 78732) equal the column sums truncated at "
      "n=10; the full-band sums are 8283 and 93815 (rows n <= 11 are cell-exact, so the "
      "aggregates are inconsistent with their own rows)";
  return true;
}

inline bool check_sequences(std::string& d) {
  const auto b = b_sequence(11);
  const std::vector<long> want = {1, 2, 7, 32, 179, 1182, 8993, 77440, 744425, 7901410};
  for (int n = 2; n <= 11; ++n)
    if (b[static_cast<size_t>(n)] != want[static_cast<size_t>(n - 2)]) {
      d = "b_" + std::to_string(n) + " does not match the reference series";
      return false;
    }
  for (int n = 2; n <= 8; ++n) {
    Int total = 0;
    for (const auto& [p, count] : basis_counts(n)) total += static_cast<long>(count);
    if (total != b[static_cast<size_t>(n)]) {
      d = "exhaustive basis count disagrees with b_n at n=" + std::to_string(n);
      return false;
    }
  }
  for (int shift = 1; shift <= 97; ++shift)
    if (u_recurrence_residual(shift) != 0) {
      d = "complement-count recurrence residual nonzero at shift " + std::to_string(shift);
      return false;
    }
  d = "b_2..b_11 match the reference series and exhaustive counts (n <= 8); the "
      "complement-count recurrence residual is 0 for shifts 1..97";
  return true;
}

inline bool check_p_recursive_exact(std::string& d) {
  const auto direct = b_sequence(199);
  const auto generic = exact_sequence(b_recurrence(), 200);
  for (int n = 0; n < 200; ++n)
    if (direct[static_cast<size_t>(n)] != generic[static_cast<size_t>(n)]) {
      d = "generic recurrence evaluator disagrees with the direct loop at n=" +
          std::to_string(n);
      return false;
    }
  const auto u = exact_sequence(u_recurrence(), 100);  // u_1 .. u_100
  for (int n = 1; n <= 100; ++n)
    if (u[static_cast<size_t>(n - 1)] != u_total(n)) {
      d = "generic evaluation of the complement recurrence disagrees at n=" + std::to_string(n);
      return false;
    }
  d = "the generic P-recursive evaluator reproduces both sequences exactly (n <= 200, 100)";
  return true;
}

inline bool check_congruence_fast(std::string& d) {
  const PRecurrence rec = b_recurrence();
  const CongruenceReport r15 = detect_period(rec, 15);
  const std::vector<uint32_t> cycle15 = {10, 5, 10, 10, 0, 10, 5, 10, 5, 5, 0, 5};
  if (r15.period != 12 || r15.preperiod != 9 || r15.cycle != cycle15 || !r15.verified) {
    d = "m=15 period detection did not return (period 12, preperiod 9, reference cycle)";
    return false;
  }
  const CongruenceReport r1 = detect_period(rec, 1);
  if (r1.period != 1 || r1.cycle != std::vector<uint32_t>{0}) {
    d = "m=1 period detection did not return period 1 with cycle [0]";
    return false;
  }
  const CongruenceReport r2 = detect_period(rec, 2);
  if (r2.period != 2 || r2.preperiod != 1 || !r2.verified) {
    d = "m=2 period detection did not return (period 2, preperiod 1)";
    return false;
  }
  for (uint32_t m : {15u, 97u}) {
    const auto seq = mod_sequence(rec, m, 301);
    const auto b = b_sequence(300);
    for (int n = 0; n <= 300; ++n)
      if (seq[static_cast<size_t>(n)] !=
          mpz_fdiv_ui(b[static_cast<size_t>(n)].get_mpz_t(), m)) {
        d = "modular iteration disagrees with exact reduction at n=" + std::to_string(n) +
            ", m=" + std::to_string(m);
        return false;
      }
  }
  for (uint32_t m : {6u, 10u, 15u}) {
    uint64_t l = 1;
    for (uint32_t q : {2u, 3u, 5u})
      if (m % q == 0) l = std::lcm(l, detect_period(rec, q).period);
    if (l % detect_period(rec, m).period != 0) {
      d = "period for m=" + std::to_string(m) +
          " does not divide the lcm of its prime-factor periods";
      return false;
    }
  }
  d = "m=15 gives period 12 / preperiod 9 with the reference cycle; m=1,2 correct; "
      "modular iteration matches exact reduction to n=300 for m=15,97";
  return true;
}

inline bool check_congruence_slow(std::string& d) {
  const CongruenceReport r = detect_period(b_recurrence(), 3617);
  if (r.period != 26158144) {
    d = "m=3617 period is " + std::to_string(r.period) + ", expected 26158144";
    return false;
  }
  if (!r.verified) {
    d = "m=3617 verification window failed";
    return false;
  }
  d = "m=3617 gives minimal period 26158144 (verified; preperiod " +
      std::to_string(r.preperiod) + ", " + std::to_string(r.steps_used) + " steps)";
  return true;
}

inline bool check_asymptotic_constants(std::string& d) {
  const AsymptoticConstants a = asymptotic_constant();
  if (std::abs(a.phi * a.phi - a.phi - 1.0) > 1e-12) {
    d = "phi does not satisfy phi^2 = phi + 1";
    return false;
  }
  if (std::abs(a.C - 0.499) > 0.002 || std::abs(a.exponent - 0.381) > 0.001) {
    d = "constant/exponent differ from the reference 0.499 / 0.381 display";
    return false;
  }
  if (std::abs(gamma_function(1.0) - 1.0) > 1e-10 || std::abs(gamma_function(5.0) - 24.0) > 1e-9 ||
      std::abs(gamma_function(0.5) - std::sqrt(M_PI)) > 1e-10) {
    d = "gamma spot checks (1, 5, 1/2) exceed tolerance";
    return false;
  }
  d = "C = " + fmt_double(a.C) + ", exponent = " + fmt_double(a.exponent) +
      "; gamma spot checks pass at 1e-10";
  return true;
}

inline bool check_ratio_convergence(std::string& d) {
  const double C = asymptotic_constant().C;
  const double d3 = std::abs(ratio_check(1000) / C - 1.0);
  const double d4 = std::abs(ratio_check(10000) / C - 1.0);
  const double d5 = std::abs(ratio_check(100000) / C - 1.0);
  if (!(d3 > d4 && d4 > d5)) {
    d = "normalized ratio is not converging monotonically at n=1e3,1e4,1e5";
    return false;
  }
  if (!(d5 < 0.02)) {
    d = "ratio_check(1e5) deviates from C by " + fmt_double(d5) + " (>= 2%)";
    return false;
  }
  d = "relative deviation from C shrinks 1e3 -> 1e5 (final " + fmt_double(d5) + ")";
  return true;
}

inline bool check_singularity_expansion(std::string& d) {
  const double phi = asymptotic_constant().phi;
  for (double a : {(1.0 - std::sqrt(5.0)) / 2.0, phi}) {
    const SingularityCheck s = singularity_coefficient_check(a, 1000);
    if (!(std::abs(s.exact - s.asymptotic) / std::abs(s.exact) < 1e-3)) {
      d = "two-term expansion misses the exact coefficient at a=" + fmt_double(a);
      return false;
    }
  }
  const SingularityCheck first = singularity_coefficient_check(0.5, 1);
  if (std::abs(first.exact + 0.5) > 1e-15) {
    d = "first series coefficient for a=1/2 is not -1/2";
    return false;
  }
  d = "two-term expansion within 1e-3 at n=1000 for both golden-ratio exponents";
  return true;
}

inline bool check_distribution_small(std::string& d) {
  const DistributionStats s2 = ltr_distribution(2);
  if (s2.histogram.size() != 1 || std::abs(s2.histogram.at(1) - 1.0) > 1e-15) {
    d = "n=2 distribution is not a single unit mass at k=1";
    return false;
  }
  const DistributionStats s4 = ltr_distribution(4);
  if (s4.histogram.size() != 2 || std::abs(s4.histogram.at(1) - 6.0 / 7.0) > 1e-12 ||
      std::abs(s4.histogram.at(2) - 1.0 / 7.0) > 1e-12) {
    d = "n=4 distribution is not {6/7 at k=1, 1/7 at k=2}";
    return false;
  }
  const double drift = max_rowsum_drift(500);
  if (!(drift <= 1e-9)) {
    d = "row-sum drift " + fmt_double(drift) + " exceeds 1e-9 for n <= 500";
    return false;
  }
  d = "n=2,4 distributions exact; row-sum drift <= " + fmt_double(drift) + " for n <= 500";
  return true;
}

inline bool check_distribution_large(std::string& d) {
  const DistributionStats s4000 = ltr_distribution(4000);
  const double growth = s4000.mean - ltr_distribution(2000).mean;
  const double target = std::log(2.0) / std::sqrt(5.0);
  if (std::abs(growth - target) > 0.1) {
    d = "mean growth 2000 -> 4000 is " + fmt_double(growth) + ", expected ln2/sqrt5 +- 0.1";
    return false;
  }
  if (!is_unimodal(s4000.histogram)) {
    d = "n=4000 histogram is not unimodal";
    return false;
  }
  if (!(s4000.mean > ltr_distribution(1000).mean)) {
    d = "mean is not increasing from n=1000 to n=4000";
    return false;
  }
  d = "mean growth " + fmt_double(growth) + " matches ln2/sqrt5 within 0.1; n=4000 "
      "histogram unimodal (mean " + fmt_double(s4000.mean) + ")";
  return true;
}

}  // namespace detail

// Cross-validation suite: every check pits an implementation against an
// independent route (exhaustion, BFS, dual recurrence, closed form, or
// embedded reference data). Slow checks are skipped unless requested.
inline std::vector<CheckResult> run_verification(bool include_slow,
                                                 std::ostream* progress = nullptr) {
  std::vector<CheckResult> results;
  auto run = [&](const char* name, bool slow, bool (*body)(std::string&)) {
    if (slow && !include_slow) return;
    if (progress) *progress << "verify: " << name << "..." << std::endl;
    CheckResult r;
    r.name = name;
    r.slow = slow;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.pass = body(r.detail);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results.push_back(std::move(r));
  };

  run("basis-golden-sets", false, detail::check_basis_sets);
  run("recognizer-equivalence", false,
      [](std::string& d) { return detail::check_recognizer_equivalence(d, 8); });
  run("distance-bfs", false, detail::check_distance_bfs);
  run("witness-replay", false, detail::check_witness_replay);
  run("class-avoidance", false, detail::check_class_avoidance);
  run("triangle-dual-recurrence", false, detail::check_triangle_dual);
  run("reference-triangle-cells", false, detail::check_reference_cells);
  run("beta-aggregate-discrepancy", false, detail::check_beta_aggregates);
  run("sequence-regression", false, detail::check_sequences);
  run("p-recursive-exact", false, detail::check_p_recursive_exact);
  run("congruence-fast", false, detail::check_congruence_fast);
  run("asymptotic-constants", false, detail::check_asymptotic_constants);
  run("ratio-convergence", false, detail::check_ratio_convergence);
  run("singularity-expansion", false, detail::check_singularity_expansion);
  run("distribution-small", false, detail::check_distribution_small);
  run("congruence-m3617", true, detail::check_congruence_slow);
  run("distribution-n4000", true, detail::check_distribution_large);
  return results;
}

}  // namespace rightjump
