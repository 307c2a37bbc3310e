#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "rightjump/asymptotics.hpp"
#include "rightjump/error.hpp"

namespace rightjump {

struct DistributionStats {
  long long n = 0;
  std::map<int, double> histogram;  // left-to-right-maxima count k -> probability
  double mean = 0.0;
  double variance = 0.0;
  double total_mass = 0.0;
};

namespace detail {

struct KahanAccumulator {
  void add(double x) {
    const double y = x - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Normalized triangle rows q_{m,p} = b_{m,p}/m! by the rescaled recurrence
//   q_{m,p} = 2(m-2) q_{m-1,p-1}/m + q_{m-2,p-1}/((m-1)m)
//           - (m-2)(m-3) q_{m-2,p-2}/((m-1)m).
// Rows are dense over p in [0, m-2]; entries off the band stay zero.
inline std::vector<double> next_q_row(const std::vector<double>& two_back,
                                      const std::vector<double>& one_back, long long m) {
  auto at = [](const std::vector<double>& row, long long p) {
    return (p >= 0 && p < static_cast<long long>(row.size())) ? row[static_cast<size_t>(p)] : 0.0;
  };
  std::vector<double> row(static_cast<size_t>(m - 1), 0.0);
  const double mm = static_cast<double>(m);
  const double nn = mm - 2.0;
  const long long lo = (m - 1) / 2, hi = m - 2;
  for (long long p = lo; p <= hi; ++p) {
    row[static_cast<size_t>(p)] = 2.0 * nn * at(one_back, p - 1) / mm +
                                  at(two_back, p - 1) / ((mm - 1.0) * mm) -
                                  nn * (nn - 1.0) * at(two_back, p - 2) / ((mm - 1.0) * mm);
  }
  return row;
}

inline std::vector<double> q_row(long long n) {
  std::vector<double> two_back;      // row 1 has no entries
  std::vector<double> one_back{0.5};  // row 2
  if (n == 2) return one_back;
  std::vector<double> cur;
  for (long long m = 3; m <= n; ++m) {
    cur = next_q_row(two_back, one_back, m);
    two_back = std::move(one_back);
    one_back = cur;
  }
  return cur;
}

inline double kahan_row_sum(const std::vector<double>& row) {
  KahanAccumulator acc;
  for (double v : row) acc.add(v);
  return acc.value();
}

}  // namespace detail

// Distribution of the number of left-to-right maxima k = n-1-p over basis
// permutations of length n, from the normalized triangle row.
inline DistributionStats ltr_distribution(long long n) {
  if (n < 2) throw Error("ltr_distribution: need n >= 2");
  if (n > 5000) throw Error("ltr_distribution: n > 5000 exceeds the quadratic-table cap");
  const std::vector<double> row = detail::q_row(n);
  const double total = detail::kahan_row_sum(row);
  const double reference = basis_fraction(n);  // independent one-dimensional recurrence
  const double drift = std::abs(total - reference) / reference;
  if (!(drift <= 1e-6))
    throw Error("ltr_distribution: row-sum health gate failed at n=" + std::to_string(n) +
                " (relative drift " + std::to_string(drift) + " vs basis_fraction)");

  DistributionStats st;
  st.n = n;
  const long long lo = (n - 1) / 2, hi = n - 2;
  detail::KahanAccumulator mass, mean;
  for (long long p = hi; p >= lo; --p) {  // k ascending
    const int k = static_cast<int>(n - 1 - p);
    const double w = row[static_cast<size_t>(p)] / total;
    st.histogram[k] = w;
    mass.add(w);
    mean.add(k * w);
  }
  st.total_mass = mass.value();
  st.mean = mean.value();
  detail::KahanAccumulator var;
  for (const auto& [k, w] : st.histogram) var.add((k - st.mean) * (k - st.mean) * w);
  st.variance = var.value();
  return st;
}

// mean(n2) - mean(n1); for n2 = 2 n1 this should sit near ln(2)/sqrt(5).
inline double mean_growth_check(long long n1, long long n2) {
  return ltr_distribution(n2).mean - ltr_distribution(n1).mean;
}

// Nondecreasing up to a single peak, nonincreasing after it.
inline bool is_unimodal(const std::map<int, double>& histogram) {
  bool falling = false;
  double prev = -1.0;
  for (const auto& [k, w] : histogram) {
    if (prev >= 0.0) {
      if (w < prev) falling = true;
      else if (w > prev && falling) return false;
    }
    prev = w;
  }
  return true;
}

// Largest relative deviation of the row sum from basis_fraction over n <= max_n;
// the agreement of the two recurrences bounds the accumulated float error.
inline double max_rowsum_drift(long long max_n) {
  if (max_n < 2) throw Error("max_rowsum_drift: need max_n >= 2");
  double worst = 0.0;
  std::vector<double> two_back;
  std::vector<double> one_back{0.5};
  double r_prev = 0.0, r_cur = 0.5;  // r_1, r_2
  worst = std::abs(detail::kahan_row_sum(one_back) - r_cur) / r_cur;
  for (long long m = 3; m <= max_n; ++m) {
    std::vector<double> cur = detail::next_q_row(two_back, one_back, m);
    const double kk = static_cast<double>(m - 2);
    const double r_next = 2.0 * kk * r_cur / (kk + 2.0) +
                          (1.0 + kk - kk * kk) * r_prev / ((kk + 1.0) * (kk + 2.0));
    r_prev = r_cur;
    r_cur = r_next;
    worst = std::max(worst, std::abs(detail::kahan_row_sum(cur) - r_cur) / r_cur);
    two_back = std::move(one_back);
    one_back = std::move(cur);
  }
  return worst;
}

}  // namespace rightjump
