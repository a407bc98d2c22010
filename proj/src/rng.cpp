#include "sexalloc/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace sexalloc {

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(next_u64());
  // Rejection to remove modulo bias.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return lo + static_cast<std::int64_t>(v % range);
}

double Rng::normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  // Marsaglia polar method.
  double u, v, s;
  do {
    u = 2.0 * u01() - 1.0;
    v = 2.0 * u01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * f;
  has_spare_normal_ = true;
  return u * f;
}

double Rng::gamma(double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("gamma: shape must be > 0");
  if (shape < 1.0) {
    // Boost via Gamma(shape+1) and a uniform power.
    const double g = gamma(shape + 1.0);
    return g * std::pow(u01_open(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = u01_open();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::beta(double a, double b) {
  const double x = gamma(a);
  const double y = gamma(b);
  return x / (x + y);
}

long Rng::poisson(double mean) {
  if (!(mean >= 0.0)) throw std::invalid_argument("poisson: mean must be >= 0");
  if (mean == 0.0) return 0;
  // exp(-mean) underflows past ~700; split using infinite divisibility.
  if (mean > 60.0) {
    const double half = mean / 2.0;
    return poisson(half) + poisson(half);
  }
  const double target = u01();
  double p = std::exp(-mean);
  double cdf = p;
  long k = 0;
  while (target > cdf && k < 100000) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

long Rng::binomial(long n, double p) {
  if (n < 0) throw std::invalid_argument("binomial: n must be >= 0");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("binomial: p must be in [0,1]");
  long count = 0;
  for (long i = 0; i < n; ++i) count += bernoulli(p) ? 1 : 0;
  return count;
}

}  // namespace sexalloc
