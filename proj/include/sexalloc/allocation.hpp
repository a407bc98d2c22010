#pragma once

#include <vector>

#include "sexalloc/rng.hpp"

namespace sexalloc {

enum class AllocationModel { Binomial, MultiplicativeBinomial, DoubleBinomial };

const char* model_name(AllocationModel model);

// p in (0,1); psi finite, ignored by the plain binomial. psi = 0 makes
// both generalized models coincide with the binomial.
struct DispersionParams {
  double p = 0.5;
  double psi = 0.0;

  void validate() const;
};

// Largest clutch size accepted by the evaluators. The generalized kernels
// stay finite in log space well past this, but exact summation cost grows
// linearly and nothing biological comes close.
inline constexpr long kMaxClutchSize = 10000;

// Unnormalized log kernel of P(M | N, p, psi) for the chosen model.
double log_allocation_kernel(AllocationModel model, long eggs, long males,
                             const DispersionParams& params);

// Normalizing constant c with pmf = c * kernel, by exact log-space
// summation over M = 0..N. Depends on N as well as (p, psi).
double allocation_log_normalizer(AllocationModel model, long eggs,
                                 const DispersionParams& params);
double normalizing_constant(AllocationModel model, long eggs,
                            const DispersionParams& params);

double log_pmf_allocation(AllocationModel model, long eggs, long males,
                          const DispersionParams& params);

// Full normalized pmf over M = 0..N.
std::vector<double> allocation_pmf(AllocationModel model, long eggs,
                                   const DispersionParams& params);

long sample_allocation(AllocationModel model, long eggs,
                       const DispersionParams& params, Rng& rng);

// Exact E[M/N] via finite summation; requires N >= 1.
double expected_sex_ratio(AllocationModel model, long eggs,
                          const DispersionParams& params);

// Normalized pmf rows for N = 0..max_eggs at fixed (model, p, psi).
// Shared by the likelihood evaluators so the per-N normalizers are
// computed once per parameter value.
class AllocationTable {
 public:
  AllocationTable(AllocationModel model, const DispersionParams& params,
                  long max_eggs);

  const std::vector<double>& row(long eggs) const { return rows_[eggs]; }
  long max_eggs() const { return static_cast<long>(rows_.size()) - 1; }
  AllocationModel model() const { return model_; }
  const DispersionParams& params() const { return params_; }

 private:
  AllocationModel model_;
  DispersionParams params_;
  std::vector<std::vector<double>> rows_;
};

}  // namespace sexalloc
