#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rightjump/error.hpp"

namespace rightjump {

// A permutation of {1..n} in one-line notation. Values and positions are
// one-based throughout, matching the combinatorics literature.
class Permutation {
public:
  Permutation() = default;

  static Permutation identity(int n) {
    if (n < 0) throw Error("identity: negative length");
    std::vector<int> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i + 1;
    return Permutation(std::move(v), Unchecked{});
  }

  static Permutation from_values(std::vector<int> values) {
    validate(values);
    return Permutation(std::move(values), Unchecked{});
  }

  // Trusted constructor for hot paths that already guarantee a bijection
  // (exhaustive enumeration via next_permutation, BFS decoding).
  static Permutation unchecked(std::vector<int> values) {
    return Permutation(std::move(values), Unchecked{});
  }

  int size() const { return static_cast<int>(vals_.size()); }
  bool empty() const { return vals_.empty(); }

  // Value at one-based position.
  int at(int pos) const {
    if (pos < 1 || pos > size()) throw Error("Permutation::at: position out of range");
    return vals_[static_cast<size_t>(pos - 1)];
  }

  // One-based position of a value.
  int position_of(int value) const {
    for (int i = 0; i < size(); ++i)
      if (vals_[static_cast<size_t>(i)] == value) return i + 1;
    throw Error("Permutation::position_of: no such value");
  }

  const std::vector<int>& values() const { return vals_; }
  std::span<const int> span() const { return vals_; }

  auto operator<=>(const Permutation&) const = default;

private:
  struct Unchecked {};
  Permutation(std::vector<int> v, Unchecked) : vals_(std::move(v)) {}

  static void validate(const std::vector<int>& v) {
    const int n = static_cast<int>(v.size());
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (int x : v) {
      if (x < 1 || x > n) throw Error("permutation value out of range: " + std::to_string(x));
      if (seen[static_cast<size_t>(x - 1)]) throw Error("duplicate value: " + std::to_string(x));
      seen[static_cast<size_t>(x - 1)] = 1;
    }
  }

  std::vector<int> vals_;
};

// Accepts whitespace- or comma-separated values ("5 3 6 2 1 4 8 7", "3,1,2"),
// or a compact digit string ("312") when every value is a single digit.
// An empty (or all-whitespace) input is the empty permutation.
inline Permutation parse_permutation(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      if (!cur.empty()) tokens.push_back(std::exchange(cur, {}));
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));

  if (tokens.empty()) return Permutation();

  const bool compact = tokens.size() == 1 && tokens[0].size() > 1 &&
                       std::all_of(tokens[0].begin(), tokens[0].end(), [](char c) {
                         return std::isdigit(static_cast<unsigned char>(c));
                       });
  std::vector<int> values;
  if (compact) {
    for (char c : tokens[0]) {
      if (c == '0') throw Error("compact digit form: value 0 is out of range");
      values.push_back(c - '0');
    }
  } else {
    for (const std::string& t : tokens) {
      size_t used = 0;
      int x = 0;
      try {
        x = std::stoi(t, &used);
      } catch (const std::exception&) {
        throw Error("malformed permutation token: '" + t + "'");
      }
      if (used != t.size()) throw Error("malformed permutation token: '" + t + "'");
      if (x < 1) throw Error("permutation value out of range: " + t);
      values.push_back(x);
    }
  }
  return Permutation::from_values(std::move(values));
}

// Canonical text form: space-separated values.
inline std::string format_permutation(const Permutation& sigma) {
  std::ostringstream os;
  for (int i = 1; i <= sigma.size(); ++i) {
    if (i > 1) os << ' ';
    os << sigma.at(i);
  }
  return os.str();
}

// Positions i with v[j] <= v[i] for all j <= i, in increasing order.
inline std::vector<int> left_to_right_maxima_of(std::span<const int> v) {
  std::vector<int> out;
  int cur = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] > cur) {
      out.push_back(static_cast<int>(i) + 1);
      cur = v[i];
    }
  }
  return out;
}

inline std::vector<int> left_to_right_maxima(const Permutation& sigma) {
  return left_to_right_maxima_of(sigma.span());
}

// t_sigma: number of non-left-to-right-maxima. Equals the right-jump
// distance of sigma from the identity.
inline int non_ltr_count_of(std::span<const int> v) {
  int maxima = 0;
  int cur = 0;
  for (int x : v) {
    if (x > cur) {
      ++maxima;
      cur = x;
    }
  }
  return static_cast<int>(v.size()) - maxima;
}

inline int non_ltr_count(const Permutation& sigma) {
  return non_ltr_count_of(sigma.span());
}

// Composition (sigma*tau)(i) = sigma(tau(i)): apply tau first.
inline Permutation compose(const Permutation& sigma, const Permutation& tau) {
  if (sigma.size() != tau.size()) throw Error("compose: length mismatch");
  std::vector<int> out(static_cast<size_t>(sigma.size()));
  for (int i = 1; i <= tau.size(); ++i)
    out[static_cast<size_t>(i - 1)] = sigma.at(tau.at(i));
  return Permutation::unchecked(std::move(out));
}

inline Permutation inverse(const Permutation& sigma) {
  std::vector<int> out(static_cast<size_t>(sigma.size()));
  for (int i = 1; i <= sigma.size(); ++i)
    out[static_cast<size_t>(sigma.at(i) - 1)] = i;
  return Permutation::unchecked(std::move(out));
}

// True iff some subsequence of sigma is order-isomorphic to pi. Exhaustive
// backtracking; every use here has |pi| <= |sigma| <= 12.
inline bool contains_pattern(const Permutation& sigma, const Permutation& pi) {
  const auto& s = sigma.values();
  const auto& p = pi.values();
  const int n = static_cast<int>(s.size());
  const int k = static_cast<int>(p.size());
  if (k == 0) return true;
  if (k > n) return false;

  std::vector<int> chosen(static_cast<size_t>(k), 0);  // chosen values
  auto dfs = [&](auto&& self, int slot, int from) -> bool {
    if (slot == k) return true;
    for (int i = from; i <= n - (k - slot); ++i) {
      const int v = s[static_cast<size_t>(i)];
      bool ok = true;
      for (int j = 0; j < slot; ++j) {
        if ((chosen[static_cast<size_t>(j)] < v) != (p[static_cast<size_t>(j)] < p[static_cast<size_t>(slot)])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen[static_cast<size_t>(slot)] = v;
      if (self(self, slot + 1, i + 1)) return true;
    }
    return false;
  };
  return dfs(dfs, 0, 0);
}

}  // namespace rightjump
