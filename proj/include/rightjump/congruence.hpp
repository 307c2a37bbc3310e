#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "rightjump/bigint.hpp"
#include "rightjump/error.hpp"

namespace rightjump {

// Integer-coefficient polynomial in the index variable, ascending powers.
class IntPolynomial {
public:
  IntPolynomial() = default;
  IntPolynomial(std::initializer_list<long long> coeffs) : coeffs_(coeffs) { trim(); }
  explicit IntPolynomial(std::vector<long long> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  const std::vector<long long>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

  Int eval(long long n) const {
    Int acc = 0;
    for (size_t i = coeffs_.size(); i-- > 0;)
      acc = acc * static_cast<long>(n) + static_cast<long>(coeffs_[i]);
    return acc;
  }

  // P(n) mod m depends on n only through n mod m.
  uint32_t eval_mod(uint32_t n_mod, uint32_t m) const {
    uint64_t acc = 0;
    for (size_t i = coeffs_.size(); i-- > 0;) {
      const uint64_t c = static_cast<uint64_t>(((coeffs_[i] % static_cast<long long>(m)) +
                                                static_cast<long long>(m))) % m;
      acc = (acc * n_mod + c) % m;
    }
    return static_cast<uint32_t>(acc);
  }

private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<long long> coeffs_;
};

// Order-r linear recurrence with polynomial coefficients:
//   P_0(n) u_n = sum_{i=1}^r P_i(n) u_{n-i}   for n >= offset,
// with initial_values pinning u at indices offset-k .. offset-1 (k >= r).
struct PRecurrence {
  int order = 0;
  std::vector<IntPolynomial> coeff_polys;  // P_0 .. P_order
  std::vector<Int> initial_values;
  long long offset = 0;

  long long base() const { return offset - static_cast<long long>(initial_values.size()); }

  void validate() const {
    if (order < 1) throw Error("PRecurrence: order must be >= 1");
    if (static_cast<int>(coeff_polys.size()) != order + 1)
      throw Error("PRecurrence: need exactly order+1 coefficient polynomials");
    if (coeff_polys[0].is_zero()) throw Error("PRecurrence: P_0 must not be identically zero");
    if (static_cast<int>(initial_values.size()) < order)
      throw Error("PRecurrence: need at least order initial values");
    if (base() < 0) throw Error("PRecurrence: initial values reach below index 0");
  }
};

// b_{n} = (2n-4) b_{n-1} + (-n^2+5n-5) b_{n-2} for n >= 3, b_0 = b_1 = 0,
// b_2 = 1 (the recurrence itself would give b_2 = 0, so it starts at 3).
inline PRecurrence b_recurrence() {
  PRecurrence r;
  r.order = 2;
  r.coeff_polys = {IntPolynomial{1}, IntPolynomial{-4, 2}, IntPolynomial{-5, 5, -1}};
  r.initial_values = {0, 0, 1};
  r.offset = 3;
  return r;
}

// u_n = n! - b_n for n >= 1 (the printed order-3 recurrence does not cover
// the step computing u_3 from u_0).
inline PRecurrence u_recurrence() {
  PRecurrence r;
  r.order = 3;
  r.coeff_polys = {IntPolynomial{1}, IntPolynomial{-6, 3}, IntPolynomial{-17, 15, -3},
                   IntPolynomial{-22, 25, -9, 1}};
  r.initial_values = {1, 1, 4};
  r.offset = 4;
  return r;
}

// Exact evaluation: u_base .. u_{base+count-1}. P_0 must divide exactly.
inline std::vector<Int> exact_sequence(const PRecurrence& rec, long long count) {
  rec.validate();
  std::vector<Int> out(rec.initial_values.begin(), rec.initial_values.end());
  out.reserve(static_cast<size_t>(std::max<long long>(count, 0)));
  for (long long n = rec.offset; static_cast<long long>(out.size()) < count; ++n) {
    Int s = 0;
    for (int i = 1; i <= rec.order; ++i)
      s += rec.coeff_polys[static_cast<size_t>(i)].eval(n) * out[out.size() - static_cast<size_t>(i)];
    const Int p0 = rec.coeff_polys[0].eval(n);
    if (p0 == 0) throw Error("exact_sequence: P_0 vanishes at n=" + std::to_string(n));
    Int q, rem;
    mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), s.get_mpz_t(), p0.get_mpz_t());
    if (rem != 0) throw Error("exact_sequence: non-exact division at n=" + std::to_string(n));
    out.push_back(std::move(q));
  }
  out.resize(static_cast<size_t>(std::max<long long>(count, 0)));
  return out;
}

namespace detail {

constexpr uint32_t kModMax = 1u << 31;
constexpr uint32_t kTableCap = 1u << 20;  // precompute coefficient tables up to this m
constexpr int kMaxOrder = 8;
constexpr uint32_t kNoInverse = 0xFFFFFFFFu;

inline uint32_t mod_inverse(uint32_t a, uint32_t m) {  // kNoInverse when gcd != 1
  if (m == 1) return 0;
  int64_t t = 0, new_t = 1, r = m, new_r = a % m;
  while (new_r != 0) {
    const int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) return kNoInverse;
  return static_cast<uint32_t>(t < 0 ? t + m : t);
}

// Window of the last r residues plus the index mod m; enough to advance the
// recurrence without remembering the absolute index.
struct ModState {
  uint32_t n_mod = 0;                      // current index mod m
  std::array<uint32_t, kMaxOrder> w{};     // w[i] = u_{n-i}; unused slots stay 0
  friend bool operator==(const ModState&, const ModState&) = default;
};

// Modular stepper for one (recurrence, m) pair. For small m the coefficient
// values P_i(n) mod m (and inverses of P_0) are tabulated per residue of n.
class ModEngine {
public:
  ModEngine(const PRecurrence& rec, uint32_t m) : rec_(&rec), m_(m) {
    rec.validate();
    if (m < 1 || m > kModMax) throw Error("modulus out of range (need 1 <= m <= 2^31)");
    if (rec.order > kMaxOrder) throw Error("recurrence order too large for modular engine");
    r_ = rec.order;
    p0_is_one_ = rec.coeff_polys[0].is_one();
    tabulated_ = m <= kTableCap;
    if (tabulated_) {
      tabs_.resize(static_cast<size_t>(r_) + 1);
      for (int i = 0; i <= r_; ++i) {
        tabs_[static_cast<size_t>(i)].resize(m);
        for (uint32_t nm = 0; nm < m; ++nm)
          tabs_[static_cast<size_t>(i)][nm] = rec.coeff_polys[static_cast<size_t>(i)].eval_mod(nm, m);
      }
      if (!p0_is_one_) {
        inv0_.resize(m);
        for (uint32_t nm = 0; nm < m; ++nm) inv0_[nm] = mod_inverse(tabs_[0][nm], m);
      }
    }
    init_mod_.reserve(rec.initial_values.size());
    for (const Int& v : rec.initial_values)
      init_mod_.push_back(static_cast<uint32_t>(mpz_fdiv_ui(v.get_mpz_t(), m)));
  }

  uint32_t m() const { return m_; }
  int order() const { return r_; }
  long long base() const { return rec_->base(); }
  long long start_index() const { return rec_->offset - 1; }  // first full-window index
  const std::vector<uint32_t>& initial_residues() const { return init_mod_; }

  // State at start_index(): window filled from the tail of the initial values.
  ModState initial_state() const {
    ModState s;
    s.n_mod = static_cast<uint32_t>(start_index() % m_);
    for (int i = 0; i < r_; ++i)
      s.w[static_cast<size_t>(i)] = init_mod_[init_mod_.size() - 1 - static_cast<size_t>(i)];
    return s;
  }

  // Advance to the next index; throws where P_0 has no inverse.
  void step(ModState& s) const {
    const uint32_t nm = s.n_mod + 1 == m_ ? 0 : s.n_mod + 1;
    uint64_t acc = 0;
    if (tabulated_) {
      for (int i = 1; i <= r_; ++i)
        acc += static_cast<uint64_t>(tabs_[static_cast<size_t>(i)][nm]) * s.w[static_cast<size_t>(i - 1)];
      acc %= m_;
      if (!p0_is_one_) {
        const uint32_t inv = inv0_[nm];
        if (inv == kNoInverse) throw_no_inverse(nm);
        acc = acc * inv % m_;
      }
    } else {
      for (int i = 1; i <= r_; ++i) {
        const uint64_t c = rec_->coeff_polys[static_cast<size_t>(i)].eval_mod(nm, m_);
        acc = (acc + c * s.w[static_cast<size_t>(i - 1)]) % m_;
      }
      if (!p0_is_one_) {
        const uint32_t inv = mod_inverse(rec_->coeff_polys[0].eval_mod(nm, m_), m_);
        if (inv == kNoInverse) throw_no_inverse(nm);
        acc = acc * inv % m_;
      }
    }
    for (int i = r_ - 1; i > 0; --i) s.w[static_cast<size_t>(i)] = s.w[static_cast<size_t>(i - 1)];
    s.w[0] = static_cast<uint32_t>(acc);
    s.n_mod = nm;
  }

private:
  [[noreturn]] void throw_no_inverse(uint32_t nm) const {
    throw Error("P_0 not invertible mod " + std::to_string(m_) + " at index = " +
                std::to_string(nm) + " (mod m)");
  }

  const PRecurrence* rec_;
  uint32_t m_;
  int r_ = 0;
  bool p0_is_one_ = false;
  bool tabulated_ = false;
  std::vector<std::vector<uint32_t>> tabs_;  // tabs_[i][n mod m] = P_i(n) mod m
  std::vector<uint32_t> inv0_;
  std::vector<uint32_t> init_mod_;
};

// Emits residues u_base, u_{base+1}, ... in order.
class ModSequence {
public:
  explicit ModSequence(const ModEngine& eng) : eng_(&eng) {}

  uint32_t next() {
    const auto& init = eng_->initial_residues();
    if (emitted_ < init.size()) {
      const uint32_t v = init[emitted_];
      if (++emitted_ == init.size()) state_ = eng_->initial_state();
      return v;
    }
    eng_->step(state_);
    ++emitted_;
    return state_.w[0];
  }

  void skip(uint64_t count) {
    for (uint64_t i = 0; i < count; ++i) next();
  }

private:
  const ModEngine* eng_;
  size_t emitted_ = 0;
  ModState state_;
};

inline std::vector<uint64_t> sorted_divisors(uint64_t x) {
  std::vector<uint64_t> primes, exps;
  uint64_t rem = x;
  for (uint64_t d = 2; d * d <= rem; ++d) {
    if (rem % d) continue;
    uint64_t e = 0;
    while (rem % d == 0) rem /= d, ++e;
    primes.push_back(d);
    exps.push_back(e);
  }
  if (rem > 1) primes.push_back(rem), exps.push_back(1);
  std::vector<uint64_t> divs{1};
  for (size_t i = 0; i < primes.size(); ++i) {
    const size_t sz = divs.size();
    uint64_t pk = 1;
    for (uint64_t e = 1; e <= exps[i]; ++e) {
      pk *= primes[i];
      for (size_t k = 0; k < sz; ++k) divs.push_back(divs[k] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace detail

// True iff P_0(n) is invertible mod m across one full coefficient period
// (m consecutive indices starting at the recurrence offset).
inline bool mod_step_check(const PRecurrence& rec, uint32_t m) {
  rec.validate();
  if (m < 1 || m > detail::kModMax) throw Error("modulus out of range (need 1 <= m <= 2^31)");
  if (rec.coeff_polys[0].is_one()) return true;
  for (uint64_t k = 0; k < m; ++k) {
    const uint32_t nm = static_cast<uint32_t>((static_cast<uint64_t>(rec.offset) + k) % m);
    const uint32_t v = rec.coeff_polys[0].eval_mod(nm, m);
    if (std::gcd(static_cast<uint64_t>(v), static_cast<uint64_t>(m)) != 1) return false;
  }
  return true;
}

// First `count` residues u_base .. u_{base+count-1} mod m.
inline std::vector<uint32_t> mod_sequence(const PRecurrence& rec, uint32_t m, long long count) {
  if (count < 0) throw Error("mod_sequence: negative count");
  detail::ModEngine eng(rec, m);
  detail::ModSequence seq(eng);
  std::vector<uint32_t> out;
  out.reserve(static_cast<size_t>(count));
  for (long long i = 0; i < count; ++i) out.push_back(seq.next());
  return out;
}

struct DetectOptions {
  uint64_t max_steps = 2'000'000'000;  // hard budget across all phases
  uint64_t cycle_limit = 1'000'000;    // materialize the cycle only if period <= this
};

struct CongruenceReport {
  uint32_t m = 1;
  long long preperiod = 0;          // minimal n_0: u_{n+period} = u_n for all n >= n_0
  uint64_t period = 1;              // minimal eventual period
  std::vector<uint32_t> cycle;      // u_{n_0} .. u_{n_0+period-1}; empty if over cycle_limit
  bool verified = false;            // re-checked over a full state period + r extra steps
  uint64_t state_period = 1;        // raw Brent cycle length of the window state
  uint64_t steps_used = 0;
};

// Eventual periodicity of (u_n mod m) by Brent cycle detection on the state
// (n mod m, u_n, ..., u_{n-r+1}), followed by minimal-period reduction over
// the divisors of the state period and exact preperiod refinement.
inline CongruenceReport detect_period(const PRecurrence& rec, uint32_t m,
                                      DetectOptions opts = {}) {
  if (!mod_step_check(rec, m))
    throw Error("detect_period: P_0 is not invertible mod " + std::to_string(m) +
                " over a full coefficient period");
  const detail::ModEngine eng(rec, m);
  uint64_t steps = 0;
  auto bump = [&](uint64_t k = 1) {
    steps += k;
    if (steps > opts.max_steps)
      throw Error("detect_period: step budget exceeded (" + std::to_string(opts.max_steps) +
                  "); raise max_steps");
  };

  // Brent: cycle length lambda of the state orbit.
  const detail::ModState s0 = eng.initial_state();
  detail::ModState tortoise = s0;
  detail::ModState hare = s0;
  eng.step(hare);
  bump();
  uint64_t power = 1, lambda = 1;
  while (!(tortoise == hare)) {
    if (power == lambda) {
      tortoise = hare;
      power <<= 1;
      lambda = 0;
    }
    eng.step(hare);
    bump();
    ++lambda;
  }
  // Cycle start: classic two-pointer pass gives mu.
  tortoise = s0;
  hare = s0;
  for (uint64_t i = 0; i < lambda; ++i) {
    eng.step(hare);
    bump();
  }
  uint64_t mu = 0;
  while (!(tortoise == hare)) {
    eng.step(tortoise);
    eng.step(hare);
    bump(2);
    ++mu;
  }
  const long long cycle_start = eng.start_index() + static_cast<long long>(mu);
  // `tortoise` now sits at cycle_start.

  // Minimal period: smallest divisor d of lambda with u_k = u_{k+d} across a
  // full window [cycle_start, cycle_start + lambda).
  uint64_t period = lambda;
  const detail::ModState at_cycle = tortoise;
  for (uint64_t d : detail::sorted_divisors(lambda)) {
    detail::ModState a = at_cycle;
    detail::ModState b = at_cycle;
    for (uint64_t i = 0; i < d; ++i) {
      eng.step(b);
      bump();
    }
    bool ok = true;
    for (uint64_t k = 0; k < lambda; ++k) {
      if (a.w[0] != b.w[0]) {
        ok = false;
        break;
      }
      eng.step(a);
      eng.step(b);
      bump(2);
    }
    if (ok) {
      period = d;
      break;
    }
  }

  // Exact preperiod: last mismatch of u_k vs u_{k+period} below the window end.
  const long long base = eng.base();
  detail::ModSequence sa(eng), sb(eng);
  sb.skip(period);
  bump(period);
  long long last_bad = base - 1;
  const long long scan_end = cycle_start + static_cast<long long>(lambda);
  for (long long k = base; k + static_cast<long long>(period) < scan_end; ++k) {
    if (sa.next() != sb.next()) last_bad = k;
    bump(2);
  }
  const long long preperiod = last_bad + 1;

  CongruenceReport rep;
  rep.m = m;
  rep.preperiod = preperiod;
  rep.period = period;
  rep.state_period = lambda;

  if (period <= opts.cycle_limit) {
    detail::ModSequence sc(eng);
    sc.skip(static_cast<uint64_t>(preperiod - base));
    bump(static_cast<uint64_t>(preperiod - base));
    rep.cycle.reserve(static_cast<size_t>(period));
    for (uint64_t i = 0; i < period; ++i) rep.cycle.push_back(sc.next());
    bump(period);
  }

  // Verification window: a full state period plus r extra steps.
  {
    detail::ModSequence va(eng), vb(eng);
    const uint64_t lead = static_cast<uint64_t>(preperiod - base);
    va.skip(lead);
    vb.skip(lead + period);
    bump(2 * lead + period);
    bool ok = true;
    const uint64_t window = lambda + static_cast<uint64_t>(eng.order()) + 1;
    for (uint64_t k = 0; k < window; ++k) {
      if (va.next() != vb.next()) {
        ok = false;
        break;
      }
      bump(2);
    }
    rep.verified = ok;
  }
  rep.steps_used = steps;
  return rep;
}

}  // namespace rightjump
