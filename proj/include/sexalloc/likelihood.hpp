#pragma once

#include <vector>

#include "sexalloc/allocation.hpp"
#include "sexalloc/dataset.hpp"

namespace sexalloc {

// theta = (p, psi, lambda, d). psi is ignored by the binomial model;
// lambda and d are ignored in primary-data analyses, which condition on
// the observed clutch sizes.
struct ModelParams {
  double p = 0.5;
  double psi = 0.0;
  double lambda = 10.0;
  double d = 0.1;

  DispersionParams dispersion() const { return {p, psi}; }
  void validate(DataMode mode = DataMode::Secondary) const;
};

// Hyperparameters: psi ~ N(0, sigma_psi^2), lambda ~ Gamma(shape, rate),
// d ~ Beta(alpha, beta); p is uniform on [0,1] throughout.
struct PriorConfig {
  double sigma_psi = 1.0;
  double lambda_shape = 0.0;
  double lambda_rate = 0.0;
  double d_alpha = 0.0;
  double d_beta = 0.0;

  void validate(DataMode mode = DataMode::Secondary) const;
};

double log_prior(const ModelParams& params, AllocationModel model,
                 const PriorConfig& priors, DataMode mode);

// Unobserved (N_i, M_i) for every clutch.
struct LatentState {
  std::vector<std::pair<long, long>> clutches;  // (eggs, male eggs)
};

inline constexpr double kDefaultTruncationEps = 1e-10;

// log P(n, m | theta) marginalized over the unobserved (N, M) by exact
// summation, the Poisson tail truncated so that the neglected mass is
// below eps. Returns -inf when the support is numerically empty.
double clutch_marginal_loglik(long n, long m, const ModelParams& params,
                              AllocationModel model,
                              double eps = kDefaultTruncationEps);

// Sum of per-clutch marginals (secondary mode), or the conditional
// allocation likelihood sum log P(M_i | N_i, p, psi) in primary mode.
double dataset_loglik(const Dataset& data, const ModelParams& params,
                      AllocationModel model,
                      double eps = kDefaultTruncationEps);

// Complete-data log-likelihood: product of Poisson clutch size,
// allocation, survival count and survivor-split factors over clutches.
// Infeasible latents give -inf.
double complete_data_loglik(const Dataset& data, const LatentState& latents,
                            const ModelParams& params, AllocationModel model);

// log pi(theta, N, M | D) up to the evidence constant: complete-data
// likelihood plus log-priors. Infeasible latents give -inf.
double complete_data_logposterior(const Dataset& data,
                                  const LatentState& latents,
                                  const ModelParams& params,
                                  AllocationModel model,
                                  const PriorConfig& priors);

// Repeated-evaluation engine for the marginal likelihood. Clutches with
// equal (n, m) are folded together; survivor probabilities are cached up
// front, and the allocation table is rebuilt only when (p, psi) change,
// so lambda/d sweeps cost O(C * N_range) multiplies.
class DatasetLikelihood {
 public:
  DatasetLikelihood(const Dataset& data, AllocationModel model,
                    double eps = kDefaultTruncationEps);

  void set_allocation(double p, double psi);
  double loglik(double lambda, double d);
  double loglik(const ModelParams& params);

  AllocationModel model() const { return model_; }
  DataMode mode() const { return mode_; }
  double eps() const { return eps_; }
  long clutch_count() const { return clutch_count_; }

 private:
  struct ClutchGroup {
    long n = 0;
    long m = 0;
    double weight = 0.0;                        // multiplicity
    std::vector<std::vector<double>> survivor;  // [N - n][M - m]
    std::vector<double> alloc_mass;             // g(N): sum_M pmf * survivor
  };

  void ensure_capacity(long max_eggs);
  void rebuild_allocation();
  long truncation_bound(double lambda);

  AllocationModel model_;
  DataMode mode_ = DataMode::Secondary;
  double eps_;
  long clutch_count_ = 0;
  long min_capacity_ = 0;
  long capacity_ = -1;  // largest tabulated N
  bool allocation_ready_ = false;
  bool have_params_ = false;
  double p_ = 0.0, psi_ = 0.0;
  double bound_lambda_ = -1.0;
  long bound_ = 0;
  std::vector<ClutchGroup> groups_;
  std::vector<std::vector<double>> alloc_rows_;  // pmf rows for N = 0..capacity
  std::vector<double> scratch_;                  // scaled Poisson-survival weights
};

}  // namespace sexalloc
