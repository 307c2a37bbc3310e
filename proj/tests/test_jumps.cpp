#include <algorithm>
#include <numeric>

#include <catch2/catch_amalgamated.hpp>

#include "rightjump/jumps.hpp"
#include "rightjump/sequences.hpp"

using namespace rightjump;

TEST_CASE("right_jump moves one value strictly to the right") {
  const Permutation id = Permutation::identity(7);
  CHECK(right_jump(id, {3, 6}) == parse_permutation("1 2 4 5 6 3 7"));
  CHECK(right_jump(parse_permutation("2 1"), {1, 2}) == parse_permutation("1 2"));
  CHECK_THROWS_AS(right_jump(id, {0, 3}), Error);
  CHECK_THROWS_AS(right_jump(id, {3, 8}), Error);
  CHECK_THROWS_AS(right_jump(id, {4, 4}), Error);
  CHECK_THROWS_AS(right_jump(id, {5, 2}), Error);
}

TEST_CASE("jump_distance basics") {
  const Permutation id = Permutation::identity(7);
  CHECK(jump_distance(id, parse_permutation("1 2 4 5 6 3 7")) == 1);
  CHECK(jump_distance(id, id) == 0);
  const Permutation sigma = parse_permutation("5 3 6 2 1 4 8 7");
  CHECK(jump_distance(sigma, sigma) == 0);
  CHECK(jump_distance(id, parse_permutation("7 1 2 3 4 5 6")) == 6);
  CHECK_THROWS_AS(jump_distance(id, Permutation::identity(3)), Error);
}

TEST_CASE("jump_distance from identity equals the non-maxima statistic") {
  for (int n = 1; n <= 6; ++n) {
    const Permutation id = Permutation::identity(n);
    std::vector<int> v(static_cast<size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    do {
      const Permutation sigma = Permutation::unchecked(v);
      CHECK(jump_distance(id, sigma) == non_ltr_count(sigma));
    } while (std::next_permutation(v.begin(), v.end()));
  }
}

TEST_CASE("sort_distance equals BFS distance to the identity for S_5") {
  // BFS layers give the true geodesic distance from the identity; sorting
  // sigma is walking from the identity to sigma^{-1}.
  const auto layers = jump_bfs_layers(5);
  for (size_t d = 0; d < layers.size(); ++d)
    for (const Permutation& sigma : layers[d])
      CHECK(sort_distance(inverse(sigma)) == static_cast<int>(d));
  CHECK(sort_distance(Permutation::identity(6)) == 0);
  CHECK(sort_distance(parse_permutation("21")) == 1);
}

TEST_CASE("BFS layers match the closed-form distance counts") {
  for (int n = 2; n <= 7; ++n) {
    const auto layers = jump_bfs_layers(n);
    const auto row = stirling_row(n);
    REQUIRE(layers.size() == static_cast<size_t>(n));
    for (size_t p = 0; p < layers.size(); ++p)
      CHECK(Int(static_cast<long>(layers[p].size())) == row[p]);
  }
  const auto layers7 = jump_bfs_layers(7);
  const std::vector<size_t> expected = {1, 21, 175, 735, 1624, 1764, 720};
  for (size_t p = 0; p < expected.size(); ++p) CHECK(layers7[p].size() == expected[p]);
  CHECK_THROWS_AS(jump_bfs_layers(9), Error);
}

TEST_CASE("every BFS layer member has matching jump distance") {
  for (int n = 2; n <= 7; ++n) {
    const auto layers = jump_bfs_layers(n);
    const Permutation id = Permutation::identity(n);
    for (size_t d = 0; d < layers.size(); ++d)
      for (const Permutation& sigma : layers[d])
        REQUIRE(jump_distance(id, sigma) == static_cast<int>(d));
  }
}

TEST_CASE("witness_jumps replays to the target with minimal length") {
  std::vector<int> v = {1, 2, 3, 4, 5, 6};
  do {
    const Permutation sigma = Permutation::unchecked(v);
    const auto jumps = witness_jumps(sigma);
    CHECK(static_cast<int>(jumps.size()) == non_ltr_count(sigma));
    CHECK(replay_jumps(6, jumps) == sigma);
  } while (std::next_permutation(v.begin(), v.end()));
}

TEST_CASE("reachable_set grows with p and caps at S_n") {
  const auto r0 = reachable_set(4, 0);
  CHECK(r0.size() == 1);
  const auto r1 = reachable_set(4, 1);
  CHECK(r1.size() == 1 + 6);  // d_{4,0} + d_{4,1}
  const auto all = reachable_set(4, 3);
  CHECK(all.size() == 24);
  for (const auto& sigma : r1) CHECK(all.count(sigma) == 1);
}
