#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "sexalloc/mcmc.hpp"

namespace sexalloc {

enum class EvidenceMethod { ChibJeliazkov, QuadratureOracle, ImportanceOracle };

// Identity token so evidence values from different datasets cannot be
// combined into a Bayes factor by mistake.
struct DatasetDigest {
  long clutches = 0;
  long sum_counts = 0;
  long sum_males = 0;
  DataMode mode = DataMode::Secondary;

  bool operator==(const DatasetDigest&) const = default;
};

DatasetDigest digest_of(const Dataset& data);

struct EvidenceEstimate {
  double log_evidence = 0.0;
  double mc_se = 0.0;
  ModelParams theta_star;
  EvidenceMethod method = EvidenceMethod::ChibJeliazkov;
  AllocationModel model = AllocationModel::Binomial;
  DatasetDigest digest;
};

struct ChibConfig {
  McmcConfig mcmc;               // pilot run; seed also derives reduced runs
  long reduced_iterations = 0;   // 0: pilot post-burn-in length
  long reduced_burn_in = 0;      // 0: reduced_iterations / 5
  bool use_augmented = false;    // default: collapsed (latent-free) chains
  double eps = kDefaultTruncationEps;
};

// Marginal likelihood through the posterior-ordinate identity
//   log pi(D) = log pi(D|t*) + log pi(t*) - log pi(t*|D),
// with t* the pilot-chain posterior mean, the likelihood ordinate
// computed exactly by the truncated-sum marginal, and the posterior
// ordinate decomposed block by block (lambda, d, p, psi) from reduced
// runs: Rao-Blackwellized conditional densities for Gibbs blocks and
// numerator/denominator acceptance ratios for Metropolis blocks.
EvidenceEstimate chib_evidence(const Dataset& data, AllocationModel model,
                               const PriorConfig& priors,
                               const ChibConfig& config);

// Same computation, also handing back the pilot chain draws.
struct ChibResult {
  EvidenceEstimate estimate;
  PosteriorSamples pilot;
};
ChibResult chib_evidence_full(const Dataset& data, AllocationModel model,
                              const PriorConfig& priors,
                              const ChibConfig& config);

struct GridSpec {
  int initial_resolution = 8;  // nodes per dimension
  int max_doublings = 3;
  double tolerance = 0.02;     // log-evidence change accepted at convergence
  double tail_mass = 1e-9;     // prior quantile truncation per tail
  double psi_range_sd = 8.0;   // psi integrated over +- this many prior sds
};

// Deterministic tensor-grid Gauss-Legendre integration of
// likelihood x prior, with refinement by doubling until the log evidence
// moves less than the tolerance. Serves as the independent cross-check
// for the Chib estimates.
EvidenceEstimate oracle_evidence(const Dataset& data, AllocationModel model,
                                 const PriorConfig& priors,
                                 const GridSpec& grid = {},
                                 double eps = kDefaultTruncationEps);

// Closed form for primary data under the binomial model: the uniform
// prior integrates to a Beta function.
double closed_form_binomial_primary_log_evidence(const Dataset& data);

enum class JeffreysCategory {
  BarelyWorthMentioning,  // BF 1-3
  Substantial,            // 3-10
  Strong,                 // 10-30
  VeryStrong,             // 30-100
  Decisive                // >100
};

const char* jeffreys_name(JeffreysCategory c);
JeffreysCategory jeffreys_category(double bayes_factor);

struct BayesFactor {
  double log_bf = 0.0;     // log evidence(numerator) - log evidence(denominator)
  bool favors_numerator = true;
  JeffreysCategory category = JeffreysCategory::BarelyWorthMentioning;
};

// Throws InputError when the two estimates come from different datasets.
BayesFactor bayes_factor(const EvidenceEstimate& numerator,
                         const EvidenceEstimate& denominator);

// Normalized model probabilities from log evidences and prior weights,
// computed in log space.
std::vector<double> model_posterior_probabilities(
    std::span<const double> log_evidences, std::span<const double> weights);

}  // namespace sexalloc
