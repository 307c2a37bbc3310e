#pragma once

#include <gmpxx.h>

namespace rightjump {

using Int = mpz_class;
using Rat = mpq_class;

inline Int factorial(unsigned long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace rightjump
