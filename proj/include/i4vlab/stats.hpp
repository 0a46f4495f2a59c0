#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace i4vlab::stats {

inline double mean(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("mean: empty");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

// Unbiased sample variance.
inline double variance(const std::vector<double>& xs) {
  if (xs.size() < 2) throw std::invalid_argument("variance: need n >= 2");
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

inline double median(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("median: empty");
  const std::size_t n = xs.size();
  std::nth_element(xs.begin(), xs.begin() + n / 2, xs.end());
  double hi = xs[n / 2];
  if (n % 2 == 1) return hi;
  std::nth_element(xs.begin(), xs.begin() + n / 2 - 1, xs.end());
  return 0.5 * (xs[n / 2 - 1] + hi);
}

// Pearson correlation of two equal-length vectors after mean-centering.
// Near-constant inputs carry no linear signal and correlate as 0.
inline double pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("pearson: need equal sizes >= 2");
  const Eigen::VectorXd ac = a.array() - a.mean();
  const Eigen::VectorXd bc = b.array() - b.mean();
  const double na = ac.norm(), nb = bc.norm();
  if (na < 1e-300 || nb < 1e-300) return 0.0;
  return ac.dot(bc) / (na * nb);
}

// P(Binomial(n, 1/2) >= k), exact.
inline double binomial_tail_half(int k, int n) {
  if (n < 0) throw std::invalid_argument("binomial_tail_half: n < 0");
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  long double tail = 0.0L;
  const long double log_half_n = -static_cast<long double>(n) * std::log(2.0L);
  for (int i = k; i <= n; ++i) {
    const long double logc = std::lgammal(static_cast<long double>(n) + 1) -
                             std::lgammal(static_cast<long double>(i) + 1) -
                             std::lgammal(static_cast<long double>(n - i) + 1);
    tail += std::expl(logc + log_half_n);
  }
  return static_cast<double>(std::min(tail, 1.0L));
}

// One-sided paired sign test for H1: diffs tend positive. Zero differences
// are dropped, as usual for the sign test. Returns the exact p-value; an
// all-zero sample is evidence of nothing and returns 1.
inline double sign_test_greater(const std::vector<double>& diffs) {
  int positives = 0, nonzero = 0;
  for (double d : diffs) {
    if (d > 0.0) {
      ++positives;
      ++nonzero;
    } else if (d < 0.0) {
      ++nonzero;
    }
  }
  if (nonzero == 0) return 1.0;
  return binomial_tail_half(positives, nonzero);
}

}  // namespace i4vlab::stats
