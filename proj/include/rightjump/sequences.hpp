#pragma once

#include <vector>

#include "rightjump/bigint.hpp"
#include "rightjump/error.hpp"

namespace rightjump {

// b_0..b_max via the order-2 recurrence
//   b_{n+2} = 2n b_{n+1} + (1 + n - n^2) b_n,  b_0 = b_1 = 0, b_2 = 1.
inline std::vector<Int> b_sequence(int max_n) {
  if (max_n < 0) throw Error("b_sequence: negative bound");
  std::vector<Int> b(static_cast<size_t>(max_n) + 1, 0);
  if (max_n >= 2) b[2] = 1;
  for (int n = 1; n + 2 <= max_n; ++n)
    b[static_cast<size_t>(n + 2)] =
        2 * n * b[static_cast<size_t>(n + 1)] + (1 + n - n * n) * b[static_cast<size_t>(n)];
  return b;
}

// Total number of basis permutations of length n.
inline Int b_total(int n) {
  if (n < 0) throw Error("b_total: negative index");
  return b_sequence(n)[static_cast<size_t>(n)];
}

// u_n = n! - b_n: permutations of length n that are not basis permutations.
inline Int u_total(int n) {
  if (n < 0) throw Error("u_total: negative index");
  return factorial(static_cast<unsigned long>(n)) - b_total(n);
}

// Residual of the order-3 recurrence
//   u_{n+3} = (n+1)(n^2-n-1) u_n - (3n^2+3n-1) u_{n+1} + 3(n+1) u_{n+2}
// at shift n. Zero for every shift n >= 1; at n = 0 the recurrence does not
// hold (it would give u_3 = 3 against the true u_3 = 4).
inline Int u_recurrence_residual(int n) {
  if (n < 0) throw Error("u_recurrence_residual: negative shift");
  const Int u0 = u_total(n), u1 = u_total(n + 1), u2 = u_total(n + 2), u3 = u_total(n + 3);
  const long nl = n;
  const long c0 = (nl + 1) * (nl * nl - nl - 1);
  const long c1 = 3 * nl * nl + 3 * nl - 1;
  const long c2 = 3 * (nl + 1);
  return u3 - (c0 * u0 - c1 * u1 + c2 * u2);
}

// d_{n,p} = s(n, n-p): permutations of length n with exactly p
// non-left-to-right-maxima, by the closed-form triple sum
//   sum_{0<=j<=h<=p} (-1)^j C(h,j) C(n-1+h, p+h) C(n+p, p-h) (j-h)^{p+h} / h!.
// Evaluated in exact rationals; the result must be an integer.
inline Int stirling_d(int n, int p) {
  if (n < 0 || p < 0 || p > n) throw Error("stirling_d: need 0 <= p <= n");
  Rat sum = 0;
  for (int h = 0; h <= p; ++h) {
    for (int j = 0; j <= h; ++j) {
      Int power;  // (j-h)^(p+h), with 0^0 = 1
      const unsigned long e = static_cast<unsigned long>(p + h);
      if (e == 0) {
        power = 1;
      } else {
        mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(h - j), e);
        if ((j != h) && (e % 2 == 1)) power = -power;
      }
      Int num = binomial(static_cast<unsigned long>(h), static_cast<unsigned long>(j)) *
                binomial(static_cast<unsigned long>(n - 1 + h), static_cast<unsigned long>(p + h)) *
                binomial(static_cast<unsigned long>(n + p), static_cast<unsigned long>(p - h)) *
                power;
      if (j % 2 == 1) num = -num;
      Rat term(num, factorial(static_cast<unsigned long>(h)));
      term.canonicalize();
      sum += term;
    }
  }
  if (sum.get_den() != 1)
    throw Error("stirling_d: non-integral result (formula transcription bug)");
  return sum.get_num();
}

// Row d_{n,0..n-1} for n >= 1 (d_{n,n} = 0 since position 1 is a maximum);
// sums to n!.
inline std::vector<Int> stirling_row(int n) {
  if (n < 1) throw Error("stirling_row: need n >= 1");
  std::vector<Int> row;
  row.reserve(static_cast<size_t>(n));
  for (int p = 0; p < n; ++p) row.push_back(stirling_d(n, p));
  return row;
}

}  // namespace rightjump
