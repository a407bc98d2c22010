#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace sexalloc {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_factorial(long n);
double log_integer(long n);  // log(n), table-backed for small n

inline double lchoose(long n, long k) {
  if (k < 0 || k > n) return kNegInf;
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

// x*log(x) with the 0*log(0) = 0 limit.
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double log_sum_exp(std::span<const double> v);

// Incremental log-sum-exp accumulator; order-deterministic.
class LogSumExp {
 public:
  void add(double log_term);
  double value() const;

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;  // sum of exp(term - max_)
};

double log_poisson_pmf(long k, double mean);
double log_binomial_pmf(long k, long n, double p);
double log_gamma_pdf(double x, double shape, double rate);
double log_beta_pdf(double x, double a, double b);
double log_normal_pdf(double x, double mean, double sd);

double normal_cdf(double x);
// 2*(1 - Phi(|u|)), computed via erfc to keep precision in the tails.
double two_sided_normal_p(double u);

double gamma_cdf(double x, double shape, double rate);
double beta_cdf(double x, double a, double b);
double gamma_quantile(double q, double shape, double rate);
double beta_quantile(double q, double a, double b);
double chi_square_sf(double x, double dof);

// One-sample Kolmogorov-Smirnov p-value for a sorted sample against an
// analytic CDF evaluated at the sample points.
double ks_test_p(std::span<const double> sorted_sample,
                 std::span<const double> cdf_at_sample);

// Empirical quantile with linear interpolation between order statistics.
double empirical_quantile(std::span<const double> sorted, double q);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule mapped to [lo, hi].
QuadratureRule gauss_legendre(int n, double lo, double hi);

}  // namespace sexalloc
