#include "sexalloc/allocation.hpp"

#include <cmath>
#include <stdexcept>

#include "sexalloc/errors.hpp"
#include "sexalloc/math_util.hpp"

namespace sexalloc {

const char* model_name(AllocationModel model) {
  switch (model) {
    case AllocationModel::Binomial: return "binomial";
    case AllocationModel::MultiplicativeBinomial: return "multiplicative";
    case AllocationModel::DoubleBinomial: return "double";
  }
  return "unknown";
}

void DispersionParams::validate() const {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("allocation: p must be in (0,1)");
  if (!std::isfinite(psi))
    throw std::invalid_argument("allocation: psi must be finite");
}

namespace {

void check_support(long eggs, long males) {
  if (eggs < 0) throw std::invalid_argument("allocation: N must be >= 0");
  if (eggs > kMaxClutchSize)
    throw std::invalid_argument("allocation: N exceeds supported maximum");
  if (males < 0 || males > eggs)
    throw std::invalid_argument("allocation: M must satisfy 0 <= M <= N");
}

}  // namespace

double log_allocation_kernel(AllocationModel model, long eggs, long males,
                             const DispersionParams& params) {
  params.validate();
  check_support(eggs, males);
  const double N = static_cast<double>(eggs);
  const double M = static_cast<double>(males);
  const double F = N - M;  // female eggs
  const double base = lchoose(eggs, males) + M * std::log(params.p) +
                      F * std::log1p(-params.p);
  switch (model) {
    case AllocationModel::Binomial:
      return base;
    case AllocationModel::MultiplicativeBinomial:
      return base + params.psi * M * F;
    case AllocationModel::DoubleBinomial:
      // Boundary terms M^{M psi} and (N-M)^{(N-M) psi} use 0^0 = 1.
      return base + params.psi * (xlogx(N) + M * std::log(params.p) +
                                  F * std::log1p(-params.p) - xlogx(M) -
                                  xlogx(F));
  }
  throw std::logic_error("allocation: unknown model");
}

double allocation_log_normalizer(AllocationModel model, long eggs,
                                 const DispersionParams& params) {
  params.validate();
  check_support(eggs, 0);
  if (model == AllocationModel::Binomial || params.psi == 0.0) return 0.0;
  LogSumExp acc;
  for (long males = 0; males <= eggs; ++males)
    acc.add(log_allocation_kernel(model, eggs, males, params));
  return -acc.value();
}

double normalizing_constant(AllocationModel model, long eggs,
                            const DispersionParams& params) {
  return std::exp(allocation_log_normalizer(model, eggs, params));
}

double log_pmf_allocation(AllocationModel model, long eggs, long males,
                          const DispersionParams& params) {
  return log_allocation_kernel(model, eggs, males, params) +
         allocation_log_normalizer(model, eggs, params);
}

std::vector<double> allocation_pmf(AllocationModel model, long eggs,
                                   const DispersionParams& params) {
  params.validate();
  check_support(eggs, 0);
  std::vector<double> logk(eggs + 1);
  double max = kNegInf;
  for (long males = 0; males <= eggs; ++males) {
    logk[males] = log_allocation_kernel(model, eggs, males, params);
    max = std::max(max, logk[males]);
  }
  std::vector<double> pmf(eggs + 1);
  double sum = 0.0;
  for (long males = 0; males <= eggs; ++males) {
    pmf[males] = std::exp(logk[males] - max);
    sum += pmf[males];
  }
  for (double& v : pmf) v /= sum;
  return pmf;
}

long sample_allocation(AllocationModel model, long eggs,
                       const DispersionParams& params, Rng& rng) {
  if (eggs == 0) {
    params.validate();
    return 0;
  }
  const std::vector<double> pmf = allocation_pmf(model, eggs, params);
  const double u = rng.u01();
  double cdf = 0.0;
  for (long males = 0; males <= eggs; ++males) {
    cdf += pmf[males];
    if (u < cdf) return males;
  }
  return eggs;  // guard against rounding at the top of the cdf
}

double expected_sex_ratio(AllocationModel model, long eggs,
                          const DispersionParams& params) {
  if (eggs < 1)
    throw std::invalid_argument("expected_sex_ratio: N must be >= 1");
  const std::vector<double> pmf = allocation_pmf(model, eggs, params);
  double mean = 0.0;
  for (long males = 0; males <= eggs; ++males)
    mean += static_cast<double>(males) * pmf[males];
  return mean / static_cast<double>(eggs);
}

AllocationTable::AllocationTable(AllocationModel model,
                                 const DispersionParams& params, long max_eggs)
    : model_(model), params_(params) {
  params.validate();
  if (max_eggs < 0 || max_eggs > kMaxClutchSize)
    throw std::invalid_argument("AllocationTable: bad max_eggs");
  rows_.reserve(max_eggs + 1);
  for (long eggs = 0; eggs <= max_eggs; ++eggs)
    rows_.push_back(allocation_pmf(model, eggs, params));
}

}  // namespace sexalloc
