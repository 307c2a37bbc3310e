#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "rightjump/permutation.hpp"

namespace rightjump {

// Condition labels of the basis-permutation characterization. (i) is the
// distance condition t = p+1 and cannot fail during recognition (p is read
// off the permutation); the structural conditions are (ii)-(iv).
enum class BasisCondition { i, ii, iii, iv };

inline const char* to_string(BasisCondition c) {
  switch (c) {
    case BasisCondition::i: return "i";
    case BasisCondition::ii: return "ii";
    case BasisCondition::iii: return "iii";
    case BasisCondition::iv: return "iv";
  }
  return "?";
}

struct BasisMembership {
  bool is_member = false;
  std::optional<int> p;                           // sigma in B_p, i.e. t-1
  std::optional<BasisCondition> failed_condition;  // set iff not a member
  friend bool operator==(const BasisMembership&, const BasisMembership&) = default;
};

namespace detail {

// Structural recognition on raw values:
//  (ii)  value n-1 is not a left-to-right maximum (n precedes n-1),
//  (iii) the second entry is not a maximum (v[1] < v[0]),
//  (iv)  between every pair of consecutive maxima that follow a third one,
//        some non-maximum exceeds the earliest maximum of the triple.
// Returns the failed condition, or nullopt for membership.
inline std::optional<BasisCondition> basis_failure(std::span<const int> v) {
  const int n = static_cast<int>(v.size());
  // (ii): scan positions of n and n-1
  int pos_n = 0, pos_n1 = 0;
  for (int i = 0; i < n; ++i) {
    if (v[static_cast<size_t>(i)] == n) pos_n = i;
    if (v[static_cast<size_t>(i)] == n - 1) pos_n1 = i;
  }
  if (pos_n > pos_n1) return BasisCondition::ii;
  if (v[1] >= v[0]) return BasisCondition::iii;
  // (iv): one pass collecting maxima values (increasing) and, per gap between
  // consecutive maxima, the largest non-maximum value strictly inside it.
  std::vector<int> maxima;
  std::vector<int> gap_max;  // gap_max[g]: largest value after maxima[g], before maxima[g+1]
  int cur = 0;
  for (int i = 0; i < n; ++i) {
    const int x = v[static_cast<size_t>(i)];
    if (x > cur) {
      maxima.push_back(x);
      gap_max.push_back(0);
      cur = x;
    } else if (x > gap_max.back()) {
      gap_max.back() = x;
    }
  }
  for (size_t a = 0; a + 2 < maxima.size(); ++a)
    if (gap_max[a + 1] <= maxima[a]) return BasisCondition::iv;
  return std::nullopt;
}

inline bool is_basis(std::span<const int> v) {
  return v.size() >= 2 && !basis_failure(v).has_value();
}

}  // namespace detail

// Membership in some B_p via the structural conditions.
inline BasisMembership check_basis(const Permutation& sigma) {
  if (sigma.size() < 2) throw Error("check_basis: length must be at least 2");
  if (auto failed = detail::basis_failure(sigma.span()))
    return BasisMembership{false, std::nullopt, failed};
  return BasisMembership{true, non_ltr_count(sigma) - 1, std::nullopt};
}

// Deletes the entry at 0-based index i and renormalizes to {1..n-1}.
inline Permutation delete_entry(const Permutation& sigma, int i) {
  const auto& v = sigma.values();
  const int removed = v[static_cast<size_t>(i)];
  std::vector<int> w;
  w.reserve(v.size() - 1);
  for (size_t k = 0; k < v.size(); ++k) {
    if (static_cast<int>(k) == i) continue;
    w.push_back(v[k] > removed ? v[k] - 1 : v[k]);
  }
  return Permutation::unchecked(std::move(w));
}

// Independent minimality oracle: sigma lies in B_p iff t = p+1 and no
// one-point deletion keeps t (every proper pattern sits inside a deletion,
// and the distance classes are pattern-closed). The failure tag is diagnostic
// only: it names the condition associated with the witness deletion.
inline BasisMembership check_basis_oracle(const Permutation& sigma) {
  const int n = sigma.size();
  if (n < 2) throw Error("check_basis_oracle: length must be at least 2");
  const int t = non_ltr_count(sigma);
  if (t == 0) return BasisMembership{false, std::nullopt, BasisCondition::ii};
  for (int i = 0; i < n; ++i) {
    if (non_ltr_count(delete_entry(sigma, i)) >= t) {
      const int value = sigma.at(i + 1);
      BasisCondition tag = BasisCondition::iv;
      if (value == n) tag = BasisCondition::ii;
      else if (i == 0) tag = BasisCondition::iii;
      return BasisMembership{false, std::nullopt, tag};
    }
  }
  return BasisMembership{true, t - 1, std::nullopt};
}

// Streams every basis permutation of length n in lexicographic order.
// fn(values, p) is called with a transient span.
template <typename Fn>
void for_each_basis(int n, Fn&& fn) {
  if (n < 2) return;
  std::vector<int> v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i + 1;
  do {
    if (detail::is_basis(v)) fn(std::span<const int>(v), non_ltr_count_of(v) - 1);
  } while (std::next_permutation(v.begin(), v.end()));
}

// All basis permutations of length n grouped by p; group sizes are b_{n,p}.
// Exhaustive over S_n, so capped (S_11 is ~4e7 states and ~8e6 members).
inline std::map<int, std::vector<Permutation>> enumerate_basis(int n) {
  if (n > 11) throw Error("enumerate_basis: n too large for exhaustion");
  std::map<int, std::vector<Permutation>> out;
  for_each_basis(n, [&](std::span<const int> v, int p) {
    out[p].push_back(Permutation::unchecked(std::vector<int>(v.begin(), v.end())));
  });
  return out;
}

// Group sizes only (memory-light version of enumerate_basis).
inline std::map<int, long long> basis_counts(int n) {
  if (n > 11) throw Error("basis_counts: n too large for exhaustion");
  std::map<int, long long> out;
  for_each_basis(n, [&](std::span<const int>, int p) { ++out[p]; });
  return out;
}

// The complete finite basis B_p, listed by increasing length and
// lexicographically within a length. Members have length in [p+2, 2p+2].
inline std::vector<Permutation> enumerate_basis_for_p(int p) {
  if (p < 0) throw Error("enumerate_basis_for_p: negative p");
  if (2 * (p + 1) > 11) throw Error("enumerate_basis_for_p: p too large for exhaustion");
  std::vector<Permutation> out;
  for (int n = p + 2; n <= 2 * p + 2; ++n) {
    for_each_basis(n, [&](std::span<const int> v, int q) {
      if (q == p) out.push_back(Permutation::unchecked(std::vector<int>(v.begin(), v.end())));
    });
  }
  return out;
}

// sigma = alpha n beta split at the position of value n: the renormalized
// patterns of alpha and beta, plus ell = |beta| - 1 (-1 for empty beta).
struct Decomposition {
  Permutation alpha_part;
  Permutation gamma_part;
  int ell = -1;
};

namespace detail {

inline Permutation pattern_of(std::span<const int> v) {
  std::vector<int> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), v[i]);
    out[i] = static_cast<int>(it - sorted.begin()) + 1;
  }
  return Permutation::unchecked(std::move(out));
}

}  // namespace detail

inline Decomposition decompose(const Permutation& sigma) {
  const int n = sigma.size();
  if (n < 1) throw Error("decompose: empty permutation");
  const int split = sigma.position_of(n);  // one-based
  const auto& v = sigma.values();
  std::span<const int> all(v);
  Decomposition d;
  d.alpha_part = detail::pattern_of(all.subspan(0, static_cast<size_t>(split - 1)));
  d.gamma_part = detail::pattern_of(all.subspan(static_cast<size_t>(split)));
  d.ell = (n - split) - 1;
  return d;
}

}  // namespace rightjump
