#pragma once

#include <cmath>
#include <string>

#include "rightjump/error.hpp"

namespace rightjump {

namespace detail {

// Lanczos approximation, g = 7, 9 terms; relative error < 1e-13 on (0, 30].
inline double lanczos_gamma(double x) {
  static constexpr double kCoeffs[9] = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {  // reflection: gamma(x) gamma(1-x) = pi / sin(pi x)
    return M_PI / (std::sin(M_PI * x) * lanczos_gamma(1.0 - x));
  }
  const double z = x - 1.0;
  double sum = kCoeffs[0];
  for (int i = 1; i < 9; ++i) sum += kCoeffs[i] / (z + i);
  const double t = z + 7.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * sum;
}

// Gamma for any non-pole real argument (poles at 0, -1, -2, ...).
inline double gamma_any(double x) {
  if (x <= 0.0 && x == std::floor(x))
    throw Error("gamma undefined at non-positive integer " + std::to_string(x));
  return lanczos_gamma(x);
}

}  // namespace detail

inline double gamma_function(double x) {
  if (!(x > 0.0)) throw Error("gamma_function: non-positive argument");
  return detail::lanczos_gamma(x);
}

struct AsymptoticConstants {
  double phi;       // golden ratio (1+sqrt 5)/2
  double exponent;  // 2 - phi
  double C;         // phi / (sqrt 5 * gamma(phi-1))
};

inline AsymptoticConstants asymptotic_constant() {
  AsymptoticConstants a;
  a.phi = (1.0 + std::sqrt(5.0)) / 2.0;
  a.exponent = 2.0 - a.phi;
  a.C = a.phi / (std::sqrt(5.0) * gamma_function(a.phi - 1.0));
  return a;
}

// r_n = b_n/n! by the normalized two-term recurrence
//   r_{n+2} = 2n r_{n+1}/(n+2) + (1+n-n^2) r_n/((n+1)(n+2)),
// seeded r_1 = 0, r_2 = 1/2. All iterates stay in [0,1].
inline double basis_fraction(long long n) {
  if (n < 2) throw Error("basis_fraction: need n >= 2");
  double prev = 0.0;  // r_1
  double cur = 0.5;   // r_2
  for (long long k = 1; k + 2 <= n; ++k) {
    const double kk = static_cast<double>(k);
    const double next =
        2.0 * kk * cur / (kk + 2.0) + (1.0 + kk - kk * kk) * prev / ((kk + 1.0) * (kk + 2.0));
    prev = cur;
    cur = next;
  }
  return cur;
}

// r_n * n^{2-phi}; converges to C as n grows.
inline double ratio_check(long long n) {
  const AsymptoticConstants a = asymptotic_constant();
  return basis_fraction(n) * std::pow(static_cast<double>(n), a.exponent);
}

struct SingularityCheck {
  double exact;       // (-1)^n binomial(a, n), by the product formula
  double asymptotic;  // 1/(gamma(-a) n^{1+a}) * (1 + a(a+1)/(2n))
};

// Coefficient [x^n](1-x)^a against its two-term singularity expansion.
inline SingularityCheck singularity_coefficient_check(double a, long long n) {
  if (a == std::floor(a))
    throw Error("singularity_coefficient_check: exponent must be a non-integer");
  if (n < 1) throw Error("singularity_coefficient_check: need n >= 1");
  SingularityCheck out;
  double prod = 1.0;
  for (long long j = 0; j < n; ++j)
    prod *= (static_cast<double>(j) - a) / (static_cast<double>(j) + 1.0);
  out.exact = prod;
  const double nn = static_cast<double>(n);
  out.asymptotic =
      (1.0 + 0.5 * a * (a + 1.0) / nn) / (detail::gamma_any(-a) * std::pow(nn, 1.0 + a));
  return out;
}

}  // namespace rightjump
