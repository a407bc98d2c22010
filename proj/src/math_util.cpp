#include "sexalloc/math_util.hpp"

#include <algorithm>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/gamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace sexalloc {

namespace {

constexpr std::size_t kLogTableSize = 1 << 16;

const std::vector<double>& log_int_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kLogTableSize, 0.0);
    for (std::size_t k = 1; k < kLogTableSize; ++k)
      t[k] = std::log(static_cast<double>(k));
    return t;
  }();
  return table;
}

const std::vector<double>& log_factorial_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kLogTableSize, 0.0);
    const auto& li = log_int_table();
    for (std::size_t k = 1; k < kLogTableSize; ++k) t[k] = t[k - 1] + li[k];
    return t;
  }();
  return table;
}

}  // namespace

double log_factorial(long n) {
  if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
  if (static_cast<std::size_t>(n) < kLogTableSize)
    return log_factorial_table()[n];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_integer(long n) {
  if (n <= 0) throw std::invalid_argument("log_integer: argument must be > 0");
  if (static_cast<std::size_t>(n) < kLogTableSize) return log_int_table()[n];
  return std::log(static_cast<double>(n));
}

double log_sum_exp(std::span<const double> v) {
  LogSumExp acc;
  for (double x : v) acc.add(x);
  return acc.value();
}

void LogSumExp::add(double log_term) {
  if (log_term == kNegInf) return;
  if (log_term <= max_) {
    sum_ += std::exp(log_term - max_);
    return;
  }
  // New maximum: rescale the accumulated sum.
  if (max_ != kNegInf) sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
  else sum_ = 1.0;
  max_ = log_term;
}

double LogSumExp::value() const {
  if (max_ == kNegInf) return kNegInf;
  return max_ + std::log(sum_);
}

double log_poisson_pmf(long k, double mean) {
  if (k < 0) return kNegInf;
  if (mean == 0.0) return k == 0 ? 0.0 : kNegInf;
  return -mean + static_cast<double>(k) * std::log(mean) - log_factorial(k);
}

double log_binomial_pmf(long k, long n, double p) {
  if (k < 0 || k > n) return kNegInf;
  if (p <= 0.0) return k == 0 ? 0.0 : kNegInf;
  if (p >= 1.0) return k == n ? 0.0 : kNegInf;
  return lchoose(n, k) + static_cast<double>(k) * std::log(p) +
         static_cast<double>(n - k) * std::log1p(-p);
}

double log_gamma_pdf(double x, double shape, double rate) {
  if (x <= 0.0) return kNegInf;
  return shape * std::log(rate) - std::lgamma(shape) +
         (shape - 1.0) * std::log(x) - rate * x;
}

double log_beta_pdf(double x, double a, double b) {
  if (x <= 0.0 || x >= 1.0) return kNegInf;
  return std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
         (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x);
}

double log_normal_pdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return -0.5 * z * z - std::log(sd) -
         0.5 * std::log(2.0 * std::numbers::pi);
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double two_sided_normal_p(double u) {
  return std::erfc(std::abs(u) / std::numbers::sqrt2);
}

double gamma_cdf(double x, double shape, double rate) {
  if (x <= 0.0) return 0.0;
  return boost::math::gamma_p(shape, rate * x);
}

double beta_cdf(double x, double a, double b) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return boost::math::ibeta(a, b, x);
}

double gamma_quantile(double q, double shape, double rate) {
  boost::math::gamma_distribution<double> dist(shape, 1.0 / rate);
  return boost::math::quantile(dist, q);
}

double beta_quantile(double q, double a, double b) {
  boost::math::beta_distribution<double> dist(a, b);
  return boost::math::quantile(dist, q);
}

double chi_square_sf(double x, double dof) {
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, x / 2.0);
}

namespace {

// Kolmogorov distribution tail Q(t) = 2 * sum (-1)^{k-1} exp(-2 k^2 t^2).
double kolmogorov_q(double t) {
  if (t <= 0.0) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

double ks_test_p(std::span<const double> sorted_sample,
                 std::span<const double> cdf_at_sample) {
  const std::size_t n = sorted_sample.size();
  if (n == 0 || cdf_at_sample.size() != n)
    throw std::invalid_argument("ks_test_p: size mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf_at_sample[i];
    const double hi = static_cast<double>(i + 1) / n - f;
    const double lo = f - static_cast<double>(i) / n;
    d = std::max({d, hi, lo});
  }
  const double sn = std::sqrt(static_cast<double>(n));
  // Stephens' small-sample adjustment.
  return kolmogorov_q((sn + 0.12 + 0.11 / sn) * d);
}

double empirical_quantile(std::span<const double> sorted, double q) {
  if (sorted.empty())
    throw std::invalid_argument("empirical_quantile: empty sample");
  if (q <= 0.0) return sorted.front();
  if (q >= 1.0) return sorted.back();
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t i = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(i);
  if (i + 1 >= sorted.size()) return sorted.back();
  return sorted[i] * (1.0 - frac) + sorted[i + 1] * frac;
}

QuadratureRule gauss_legendre(int n, double lo, double hi) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  if (!(hi > lo)) throw std::invalid_argument("gauss_legendre: empty interval");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton iteration on P_n, nodes on [-1,1], then affine map to [lo,hi].
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.nodes[i] = x;
    rule.nodes[n - 1 - i] = -x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = mid - half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

}  // namespace sexalloc
