#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include <catch2/catch_amalgamated.hpp>

#include "rightjump/basis.hpp"
#include "rightjump/bigint.hpp"
#include "rightjump/triangle.hpp"

using namespace rightjump;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string render(const std::vector<Permutation>& perms) {
  std::string out;
  for (const auto& p : perms) out += format_permutation(p) + "\n";
  return out;
}

}  // namespace

TEST_CASE("membership spot checks") {
  CHECK(check_basis(parse_permutation("21")) == BasisMembership{true, 0, std::nullopt});
  CHECK(check_basis(parse_permutation("2143")) == BasisMembership{true, 1, std::nullopt});
  CHECK(check_basis(parse_permutation("4123")) == BasisMembership{true, 2, std::nullopt});
  CHECK(check_basis_oracle(parse_permutation("321")) == BasisMembership{true, 1, std::nullopt});
  CHECK(check_basis_oracle(parse_permutation("4213")).is_member);
  CHECK(check_basis_oracle(parse_permutation("4213")).p == 2);
  for (int n = 2; n <= 7; ++n) {
    const BasisMembership m = check_basis(Permutation::identity(n));
    CHECK_FALSE(m.is_member);
    CHECK(m.failed_condition == BasisCondition::ii);
  }
  CHECK_THROWS_AS(check_basis(Permutation::identity(1)), Error);
  CHECK_THROWS_AS(check_basis_oracle(Permutation::identity(0)), Error);
}

TEST_CASE("every deletion of 312 stays within one jump") {
  const Permutation sigma = parse_permutation("312");
  for (int i = 0; i < 3; ++i) CHECK(non_ltr_count(delete_entry(sigma, i)) <= 1);
}

TEST_CASE("recognizer equivalence over S_2..S_9") {
  for (int n = 2; n <= 9; ++n) {
    long long mismatches = 0;
    std::vector<int> v(static_cast<size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    do {
      const Permutation sigma = Permutation::unchecked(v);
      const BasisMembership direct = check_basis(sigma);
      const BasisMembership oracle = check_basis_oracle(sigma);
      if (direct.is_member != oracle.is_member || direct.p != oracle.p) ++mismatches;
    } while (std::next_permutation(v.begin(), v.end()));
    REQUIRE(mismatches == 0);
  }
}

TEST_CASE("basis sets match golden files byte-exact") {
  CHECK(render(enumerate_basis_for_p(0)) == slurp(std::string(GOLDEN_DIR) + "/basis_p0.txt"));
  CHECK(render(enumerate_basis_for_p(1)) == slurp(std::string(GOLDEN_DIR) + "/basis_p1.txt"));
  CHECK(render(enumerate_basis_for_p(2)) == slurp(std::string(GOLDEN_DIR) + "/basis_p2.txt"));
  CHECK_THROWS_AS(enumerate_basis_for_p(5), Error);  // would need length 12 exhaustion
}

TEST_CASE("enumerate_basis groups and sizes") {
  const auto g2 = enumerate_basis(2);
  REQUIRE(g2.size() == 1);
  CHECK(g2.at(0) == std::vector<Permutation>{parse_permutation("21")});

  const auto g4 = enumerate_basis(4);
  REQUIRE(g4.size() == 2);
  CHECK(g4.at(1).size() == 1);
  CHECK(g4.at(1)[0] == parse_permutation("2143"));
  CHECK(g4.at(2).size() == 6);

  const auto g5 = enumerate_basis(5);
  CHECK(g5.at(2).size() == 8);
  CHECK(g5.at(3).size() == 24);

  CHECK_THROWS_AS(enumerate_basis(12), Error);
}

TEST_CASE("length bounds: members of B_p have length in [p+2, 2p+2]") {
  for (int p = 0; p <= 3; ++p)
    for (const Permutation& sigma : enumerate_basis_for_p(p)) {
      CHECK(sigma.size() >= p + 2);
      CHECK(sigma.size() <= 2 * (p + 1));
    }
}

TEST_CASE("counting identity against the triangle") {
  const Triangle t = build_triangle(11);
  for (int n = 2; n <= 9; ++n) {
    const auto counts = basis_counts(n);
    for (int p = Triangle::band_lo(n); p <= Triangle::band_hi(n); ++p) {
      const auto it = counts.find(p);
      const long got = it == counts.end() ? 0 : static_cast<long>(it->second);
      CHECK(Int(got) == t.at(n, p));
    }
  }
}

TEST_CASE("counting identity for n=10 and n=11 (slow exhaustion)") {
  const Triangle t = build_triangle(11);
  for (int n : {10, 11}) {
    const auto counts = basis_counts(n);
    for (int p = Triangle::band_lo(n); p <= Triangle::band_hi(n); ++p) {
      const auto it = counts.find(p);
      const long got = it == counts.end() ? 0 : static_cast<long>(it->second);
      REQUIRE(Int(got) == t.at(n, p));
    }
  }
  CHECK(basis_counts(11).at(5) == 50);
}

TEST_CASE("decompose splits at the maximal value") {
  const Decomposition d = decompose(parse_permutation("21534"));
  CHECK(d.alpha_part == parse_permutation("21"));
  CHECK(d.gamma_part == parse_permutation("12"));
  CHECK(d.ell == 1);

  // maximum first: empty prefix, the rest is the suffix pattern
  const Decomposition e = decompose(parse_permutation("4123"));
  CHECK(e.alpha_part.size() == 0);
  CHECK(e.gamma_part == parse_permutation("123"));
  CHECK(e.ell == 2);

  const Decomposition f = decompose(parse_permutation("1"));
  CHECK(f.alpha_part.size() == 0);
  CHECK(f.gamma_part.size() == 0);
  CHECK(f.ell == -1);  // no suffix at all: the maximum sits last
}

TEST_CASE("decomposition bijection with suffix value set, and group counts") {
  // Key: (alpha pattern, gamma pattern, value set of the suffix). Each group
  // (n, p, ell) must have (ell+1)! C(n-2, ell) b_{n-ell-2, p-ell-1} members
  // (with the convention that an empty alpha contributes factor 1 when
  // n = 2 ell + 2... i.e. the anchor column).
  const Triangle t = build_triangle(11);
  for (int n = 2; n <= 8; ++n) {
    const auto groups = enumerate_basis(n);
    for (const auto& [p, members] : groups) {
      std::map<int, std::set<std::string>> keys_by_ell;
      std::map<int, long long> count_by_ell;
      for (const Permutation& sigma : members) {
        const Decomposition d = decompose(sigma);
        std::string key = format_permutation(d.alpha_part) + "|" +
                          format_permutation(d.gamma_part) + "|";
        for (int pos = sigma.position_of(n) + 1; pos <= n; ++pos)
          key += std::to_string(sigma.at(pos)) + ",";
        CHECK(keys_by_ell[d.ell].insert(key).second);  // injective within (n,p,ell)
        ++count_by_ell[d.ell];
      }
      for (const auto& [ell, count] : count_by_ell) {
        const int k = n - ell - 2;  // prefix length
        Int expected = factorial(static_cast<unsigned long>(ell + 1)) *
                       binomial(static_cast<unsigned long>(n - 2),
                                static_cast<unsigned long>(ell));
        if (k >= 2) expected *= t.at(k, p - ell - 1);
        else if (k != 0) expected = -1;  // k=1 should never occur
        CHECK(Int(static_cast<long>(count)) == expected);
      }
    }
  }
}

TEST_CASE("prefix part of a basis decomposition is itself a basis permutation") {
  // For members with prefix length k >= 2, the prefix pattern is a basis
  // permutation with exactly p+k-n+2 non-maxima.
  for (int n = 2; n <= 8; ++n)
    for (const auto& [p, members] : enumerate_basis(n))
      for (const Permutation& sigma : members) {
        const Decomposition d = decompose(sigma);
        const int k = d.alpha_part.size();
        CHECK(k != 1);
        if (k >= 2) {
          CHECK(detail::is_basis(d.alpha_part.span()));
          CHECK(non_ltr_count(d.alpha_part) == p + k - n + 2);
        }
      }
}
