#include <cstdio>
#include <fstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "rightjump/sequences.hpp"
#include "rightjump/triangle.hpp"

using namespace rightjump;

namespace {

struct TempFile {
  explicit TempFile(const std::string& name) : path("/tmp/rightjump_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
  std::string path;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  REQUIRE(out);
  out << content;
}

}  // namespace

TEST_CASE("band geometry and anchors") {
  const Triangle t = build_triangle(12);
  CHECK(Triangle::band_lo(2) == 0);
  CHECK(Triangle::band_lo(7) == 3);
  CHECK(Triangle::band_hi(7) == 5);
  CHECK(t.at(5, 3) == 24);         // (5-1)!
  CHECK(t.at(12, 10) == 39916800); // (12-1)!
  CHECK(t.at(7, 2) == 0);          // below the band
  CHECK(t.at(7, 6) == 0);          // above the band
  CHECK_THROWS_AS(t.at(13, 5), Error);
  CHECK_THROWS_AS(Triangle(1, TriangleMethod::ode), Error);
}

TEST_CASE("reference cells for rows 2..11") {
  const Triangle t = build_triangle(11);
  CHECK(t.at(2, 0) == 1);
  CHECK(t.at(3, 1) == 2);
  CHECK(t.at(4, 1) == 1);
  CHECK(t.at(4, 2) == 6);
  CHECK(t.at(5, 2) == 8);
  CHECK(t.at(6, 3) == 58);
  CHECK(t.at(7, 4) == 444);
  CHECK(t.at(8, 5) == 3708);
  CHECK(t.at(9, 6) == 33984);
  CHECK(t.at(10, 6) == 39708);
  CHECK(t.at(11, 5) == 50);
  CHECK(t.at(11, 9) == 3628800);
  CHECK(t.row_sum(10) == 744425);
  CHECK(t.row_sum(11) == 7901410);
}

TEST_CASE("the two builders agree bit-exact up to n=60") {
  const Triangle conv = build_triangle_convolution(60);
  const Triangle ode = build_triangle_ode(60);
  CHECK(conv == ode);
}

TEST_CASE("row sums equal the two-term recurrence up to n=200") {
  const Triangle t = build_triangle_ode(200);
  const auto b = b_sequence(200);
  for (int n = 2; n <= 200; ++n) REQUIRE(t.row_sum(n) == b[static_cast<size_t>(n)]);
}

TEST_CASE("column aggregates") {
  const Triangle t = build_triangle(14);
  const std::vector<long> reference = {1, 3, 15, 101, 841};
  for (int p = 0; p <= 4; ++p) CHECK(beta(p, t) == reference[static_cast<size_t>(p)]);
  // Full-band sums for p=5,6. The printed aggregates 8232 and 78732 are the
  // column sums truncated at n=10 (they drop the n=11 and n=12 cells), so
  // they cannot match any band-complete computation; see README.
  CHECK(beta(5, t) == 8283);
  CHECK(beta(6, t) == 93815);
  Int trunc5 = 0, trunc6 = 0;
  for (int n = 7; n <= 10; ++n) trunc5 += t.at(n, 5);
  for (int n = 8; n <= 10; ++n) trunc6 += t.at(n, 6);
  CHECK(trunc5 == 8232);
  CHECK(trunc6 == 78732);
  CHECK_THROWS_AS(beta(7, t), Error);  // needs max_n >= 16
  CHECK_THROWS_AS(beta(-1, t), Error);
}

TEST_CASE("save/load round-trip") {
  TempFile f("roundtrip.txt");
  const Triangle t = build_triangle(30);
  save_triangle(t, f.path);
  const Triangle back = load_triangle(f.path);
  CHECK(back == t);
  CHECK(back.max_n() == 30);
}

TEST_CASE("golden cache file loads and matches the built triangle") {
  const Triangle golden = load_triangle(std::string(GOLDEN_DIR) + "/triangle_n11.txt");
  CHECK(golden == build_triangle(11));
  CHECK(golden.at(11, 7) == 525240);
}

TEST_CASE("load rejects malformed caches") {
  const std::string header = "# basis triangle v1\nmax_n 4\nmethod ode\n";
  TempFile f("badcache.txt");

  write_file(f.path, "wrong magic\n");
  CHECK_THROWS_WITH(load_triangle(f.path), Catch::Matchers::ContainsSubstring("magic"));

  write_file(f.path, header + "2 0 1\n3 1 2\n4 1 1\n");  // missing 4 2 6
  CHECK_THROWS_WITH(load_triangle(f.path), Catch::Matchers::ContainsSubstring("truncated"));

  write_file(f.path, header + "2 0 1\n3 1 2\n4 1 1\n4 2 6\n4 2 6\n");
  CHECK_THROWS_WITH(load_triangle(f.path), Catch::Matchers::ContainsSubstring("duplicate"));

  write_file(f.path, header + "2 0 1\n3 1 2\n4 0 9\n4 1 1\n4 2 6\n");
  CHECK_THROWS_WITH(load_triangle(f.path), Catch::Matchers::ContainsSubstring("band"));

  write_file(f.path, header + "2 0 1\n3 1 2\n4 1 1\n4 2 six\n");
  CHECK_THROWS_WITH(load_triangle(f.path), Catch::Matchers::ContainsSubstring("bad integer"));

  write_file(f.path, header + "2 0 1\n3 1 2\n4 1 1\n4 2 6 extra\n");
  CHECK_THROWS_WITH(load_triangle(f.path), Catch::Matchers::ContainsSubstring("trailing"));

  write_file(f.path, header + "2 0 -1\n3 1 2\n4 1 1\n4 2 6\n");
  CHECK_THROWS_WITH(load_triangle(f.path), Catch::Matchers::ContainsSubstring("negative"));

  // anchor violation caught by validate() after a complete parse
  write_file(f.path, header + "2 0 1\n3 1 2\n4 1 1\n4 2 7\n");
  CHECK_THROWS_WITH(load_triangle(f.path), Catch::Matchers::ContainsSubstring("anchor"));

  CHECK_THROWS_WITH(load_triangle("/nonexistent/path/x.txt"),
                    Catch::Matchers::ContainsSubstring("cannot open"));
}
