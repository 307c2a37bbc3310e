#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rightjump/bigint.hpp"
#include "rightjump/error.hpp"
#include "rightjump/sequences.hpp"

namespace rightjump {

enum class TriangleMethod { convolution, ode };

inline const char* to_string(TriangleMethod m) {
  return m == TriangleMethod::convolution ? "convolution" : "ode";
}

// Exact table of b_{n,p}: the number of basis permutations of length n with
// p+1 non-left-to-right-maxima. Entries live in the band
// ceil((n-2)/2) <= p <= n-2 and are zero elsewhere.
class Triangle {
public:
  Triangle(int max_n, TriangleMethod method) : max_n_(max_n), method_(method) {
    if (max_n < 2) throw Error("Triangle: max_n must be at least 2");
    rows_.resize(static_cast<size_t>(max_n) + 1);
    for (int n = 2; n <= max_n; ++n)
      rows_[static_cast<size_t>(n)].assign(static_cast<size_t>(band_hi(n) - band_lo(n) + 1), 0);
  }

  static int band_lo(int n) { return (n - 1) / 2; }  // ceil((n-2)/2)
  static int band_hi(int n) { return n - 2; }

  int max_n() const { return max_n_; }
  TriangleMethod method() const { return method_; }

  bool in_band(int n, int p) const {
    return n >= 2 && p >= band_lo(n) && p <= band_hi(n);
  }

  const Int& at(int n, int p) const {
    static const Int zero = 0;
    if (n < 0 || n > max_n_) throw Error("Triangle::at: n out of range");
    if (!in_band(n, p)) return zero;
    return rows_[static_cast<size_t>(n)][static_cast<size_t>(p - band_lo(n))];
  }

  void set(int n, int p, Int value) {
    if (!in_band(n, p)) throw Error("Triangle::set: entry outside band");
    rows_[static_cast<size_t>(n)][static_cast<size_t>(p - band_lo(n))] = std::move(value);
  }

  Int row_sum(int n) const {
    Int s = 0;
    for (int p = band_lo(n); p <= band_hi(n); ++p) s += at(n, p);
    return s;
  }

  // Band/anchor/sign invariants; throws on violation.
  void validate() const {
    for (int n = 2; n <= max_n_; ++n) {
      if (at(n, band_hi(n)) != factorial(static_cast<unsigned long>(n - 1)))
        throw Error("Triangle: anchor b_{n,n-2} != (n-1)! at n=" + std::to_string(n));
      for (int p = band_lo(n); p <= band_hi(n); ++p)
        if (at(n, p) < 0) throw Error("Triangle: negative entry");
    }
  }

  friend bool operator==(const Triangle& a, const Triangle& b) {
    return a.max_n_ == b.max_n_ && a.rows_ == b.rows_;
  }

private:
  int max_n_;
  TriangleMethod method_;
  std::vector<std::vector<Int>> rows_;
};

// Convolution route: anchors b_{n,n-2} = (n-1)! and
//   b_{n,p} = sum_{l=0}^{p-1} (l+1)! C(n-2,l) b_{n-l-2, p-l-1}   (p < n-2).
inline Triangle build_triangle_convolution(int max_n) {
  Triangle t(max_n, TriangleMethod::convolution);
  for (int n = 2; n <= max_n; ++n) {
    for (int p = Triangle::band_lo(n); p <= Triangle::band_hi(n); ++p) {
      if (p == n - 2) {
        t.set(n, p, factorial(static_cast<unsigned long>(n - 1)));
        continue;
      }
      Int s = 0;
      for (int l = 0; l <= p - 1; ++l) {
        const int m = n - l - 2, q = p - l - 1;
        if (m < 2 || !t.in_band(m, q)) continue;
        s += factorial(static_cast<unsigned long>(l + 1)) *
             binomial(static_cast<unsigned long>(n - 2), static_cast<unsigned long>(l)) *
             t.at(m, q);
      }
      t.set(n, p, std::move(s));
    }
  }
  t.validate();
  return t;
}

// Coefficient identity of the defining differential equation
// 1 + yB - (1-xy)^2 B_xx = 0, extracted at [x^n y^p]:
//   b_{n+2,p} = 2n b_{n+1,p-1} + b_{n,p-1} - n(n-1) b_{n,p-2},
// seeded with b_{2,0} = 1 (the anchors fall out of the recurrence).
inline Triangle build_triangle_ode(int max_n) {
  Triangle t(max_n, TriangleMethod::ode);
  t.set(2, 0, 1);
  for (int m = 3; m <= max_n; ++m) {
    const long n = m - 2;
    for (int p = Triangle::band_lo(m); p <= Triangle::band_hi(m); ++p)
      t.set(m, p, 2 * n * t.at(m - 1, p - 1) + t.at(m - 2, p - 1) -
                      n * (n - 1) * t.at(m - 2, p - 2));
  }
  t.validate();
  return t;
}

// Default builder: the fast ode route, cross-validated against the
// convolution route on a prefix of the table before being returned.
inline Triangle build_triangle(int max_n) {
  Triangle t = build_triangle_ode(max_n);
  const int gate = std::min(max_n, 40);
  const Triangle conv = build_triangle_convolution(gate);
  for (int n = 2; n <= gate; ++n)
    for (int p = Triangle::band_lo(n); p <= Triangle::band_hi(n); ++p)
      if (t.at(n, p) != conv.at(n, p))
        throw Error("triangle builders disagree at n=" + std::to_string(n) +
                    " p=" + std::to_string(p));
  return t;
}

// beta_p = |B_p| = sum of column p over its full support n in [p+2, 2p+2].
inline Int beta(int p, const Triangle& t) {
  if (p < 0) throw Error("beta: negative p");
  if (t.max_n() < 2 * p + 2) throw Error("beta: triangle too small, need max_n >= 2p+2");
  Int s = 0;
  for (int n = p + 2; n <= 2 * p + 2; ++n) s += t.at(n, p);
  return s;
}

inline void save_triangle(const Triangle& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("save_triangle: cannot open " + path);
  out << "# basis triangle v1\n";
  out << "max_n " << t.max_n() << "\n";
  out << "method " << to_string(t.method()) << "\n";
  for (int n = 2; n <= t.max_n(); ++n)
    for (int p = Triangle::band_lo(n); p <= Triangle::band_hi(n); ++p)
      out << n << ' ' << p << ' ' << t.at(n, p) << '\n';
  if (!out) throw Error("save_triangle: write failed for " + path);
}

inline Triangle load_triangle(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("load_triangle: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != "# basis triangle v1")
    throw Error("load_triangle: bad magic line");
  int max_n = 0;
  std::string method_name;
  {
    std::string key;
    if (!std::getline(in, line)) throw Error("load_triangle: truncated header");
    std::istringstream ls(line);
    if (!(ls >> key >> max_n) || key != "max_n") throw Error("load_triangle: bad max_n line");
    if (!std::getline(in, line)) throw Error("load_triangle: truncated header");
    std::istringstream ms(line);
    if (!(ms >> key >> method_name) || key != "method")
      throw Error("load_triangle: bad method line");
  }
  TriangleMethod method;
  if (method_name == "convolution") method = TriangleMethod::convolution;
  else if (method_name == "ode") method = TriangleMethod::ode;
  else throw Error("load_triangle: unknown method '" + method_name + "'");

  Triangle t(max_n, method);
  std::map<std::pair<int, int>, bool> seen;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    int n = 0, p = 0;
    std::string value;
    if (!(ls >> n >> p >> value)) throw Error("load_triangle: malformed entry line: " + line);
    std::string rest;
    if (ls >> rest) throw Error("load_triangle: trailing tokens on line: " + line);
    if (!t.in_band(n, p) || n > max_n)
      throw Error("load_triangle: entry outside band: n=" + std::to_string(n) +
                  " p=" + std::to_string(p));
    if (!seen.emplace(std::make_pair(n, p), true).second)
      throw Error("load_triangle: duplicate entry for n=" + std::to_string(n) +
                  " p=" + std::to_string(p));
    Int v;
    if (mpz_set_str(v.get_mpz_t(), value.c_str(), 10) != 0)
      throw Error("load_triangle: bad integer: " + value);
    if (v < 0) throw Error("load_triangle: negative entry");
    t.set(n, p, std::move(v));
  }
  size_t expected = 0;
  for (int n = 2; n <= max_n; ++n)
    expected += static_cast<size_t>(Triangle::band_hi(n) - Triangle::band_lo(n) + 1);
  if (seen.size() != expected) throw Error("load_triangle: truncated file (missing entries)");
  t.validate();
  return t;
}

}  // namespace rightjump
