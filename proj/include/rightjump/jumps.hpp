#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <set>
#include <span>
#include <unordered_map>
#include <vector>

#include "rightjump/permutation.hpp"

namespace rightjump {

// A right-jump: the element at from_pos is removed and reinserted so that it
// occupies to_pos in the result (from_pos < to_pos).
struct Jump {
  int from_pos = 0;
  int to_pos = 0;
  friend bool operator==(const Jump&, const Jump&) = default;
};

inline Permutation right_jump(const Permutation& sigma, Jump j) {
  const int n = sigma.size();
  if (j.from_pos < 1 || j.to_pos > n) throw Error("right_jump: position out of range");
  if (j.from_pos >= j.to_pos) throw Error("right_jump: from_pos must be < to_pos");
  std::vector<int> v = sigma.values();
  const int moved = v[static_cast<size_t>(j.from_pos - 1)];
  v.erase(v.begin() + (j.from_pos - 1));
  v.insert(v.begin() + (j.to_pos - 1), moved);
  return Permutation::unchecked(std::move(v));
}

// Minimal number of right-jumps to obtain pi from sigma (t of sigma^{-1}*pi).
inline int jump_distance(const Permutation& sigma, const Permutation& pi) {
  if (sigma.size() != pi.size()) throw Error("jump_distance: length mismatch");
  return non_ltr_count(compose(inverse(sigma), pi));
}

// Minimal number of right-jumps to sort sigma (reach the identity).
inline int sort_distance(const Permutation& sigma) {
  return non_ltr_count(inverse(sigma));
}

// An explicit optimal jump sequence from the identity to sigma, of length
// exactly non_ltr_count(sigma). Built by un-jumping: repeatedly move the
// leftmost non-maximum back next to the smallest larger maximum on its left,
// recording the inverse move; the recorded moves replay in reverse order.
inline std::vector<Jump> witness_jumps(const Permutation& sigma) {
  std::vector<int> v = sigma.values();
  std::vector<Jump> rev;
  for (;;) {
    // leftmost non-left-to-right-maximum
    int i = -1;  // 0-based
    int cur = 0;
    for (size_t k = 0; k < v.size(); ++k) {
      if (v[k] > cur) {
        cur = v[k];
      } else {
        i = static_cast<int>(k);
        break;
      }
    }
    if (i < 0) break;  // identity reached
    // smallest left-to-right maximum above v[i]; all of v[0..i-1] are maxima
    int j = -1;
    for (int k = 0; k < i; ++k) {
      if (v[static_cast<size_t>(k)] > v[static_cast<size_t>(i)]) {
        j = k;
        break;
      }
    }
    rev.push_back(Jump{j + 1, i + 1});
    const int moved = v[static_cast<size_t>(i)];
    v.erase(v.begin() + i);
    v.insert(v.begin() + j, moved);
  }
  return {rev.rbegin(), rev.rend()};
}

// Applies jumps in order starting from the identity of length n.
inline Permutation replay_jumps(int n, std::span<const Jump> jumps) {
  Permutation p = Permutation::identity(n);
  for (const Jump& j : jumps) p = right_jump(p, j);
  return p;
}

namespace detail {

inline uint32_t pack_perm(std::span<const int> v) {
  uint32_t key = 0;
  for (size_t i = 0; i < v.size(); ++i)
    key |= static_cast<uint32_t>(v[i] - 1) << (4 * i);
  return key;
}

inline std::vector<int> unpack_perm(uint32_t key, int n) {
  std::vector<int> v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    v[static_cast<size_t>(i)] = static_cast<int>((key >> (4 * i)) & 0xF) + 1;
  return v;
}

}  // namespace detail

// BFS layers of the right-jump graph from the identity: layer p holds the
// permutations at distance exactly p (the set D_p). Exhaustive oracle,
// capped to keep the n! state space in memory.
inline std::vector<std::vector<Permutation>> jump_bfs_layers(int n, int cap = 8) {
  if (n < 0) throw Error("jump_bfs_layers: negative length");
  if (n > cap) throw Error("jump_bfs_layers: n too large for exhaustive BFS");
  std::unordered_map<uint32_t, int> dist;
  std::deque<uint32_t> queue;
  const uint32_t start = detail::pack_perm(Permutation::identity(n).span());
  dist[start] = 0;
  queue.push_back(start);
  std::vector<std::vector<Permutation>> layers(1);
  layers[0].push_back(Permutation::identity(n));
  while (!queue.empty()) {
    const uint32_t key = queue.front();
    queue.pop_front();
    const int d = dist[key];
    std::vector<int> v = detail::unpack_perm(key, n);
    for (int from = 0; from < n - 1; ++from) {
      const int moved = v[static_cast<size_t>(from)];
      for (int to = from + 1; to < n; ++to) {
        std::vector<int> w = v;
        w.erase(w.begin() + from);
        w.insert(w.begin() + to, moved);
        const uint32_t wk = detail::pack_perm(w);
        if (dist.emplace(wk, d + 1).second) {
          queue.push_back(wk);
          if (static_cast<size_t>(d + 1) >= layers.size()) layers.resize(static_cast<size_t>(d + 2));
          layers[static_cast<size_t>(d + 1)].push_back(Permutation::unchecked(std::move(w)));
        }
      }
    }
  }
  for (auto& layer : layers) std::sort(layer.begin(), layer.end());
  return layers;
}

// C_p: permutations of length n reachable from the identity in at most p
// right-jumps, via exhaustive BFS.
inline std::set<Permutation> reachable_set(int n, int p, int cap = 8) {
  if (p < 0) throw Error("reachable_set: negative distance");
  std::set<Permutation> out;
  const auto layers = jump_bfs_layers(n, cap);
  for (size_t d = 0; d < layers.size() && d <= static_cast<size_t>(p); ++d)
    out.insert(layers[d].begin(), layers[d].end());
  return out;
}

}  // namespace rightjump
