#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sexalloc/likelihood.hpp"

namespace sexalloc {

struct McmcConfig {
  long iterations = 20000;
  long burn_in = 5000;
  long thin = 1;
  std::uint64_t seed = 1;
  double proposal_scale_p = 0.6;    // random walk on logit(p)
  double proposal_scale_psi = 0.3;  // random walk on psi
  double proposal_scale_lambda = 0.15;  // random walk on log(lambda)
  double proposal_scale_d = 0.5;        // random walk on logit(d)
  long latent_step = 1;  // latent sweep every this many iterations
  bool adapt = true;     // Robbins-Monro scale tuning, burn-in only

  void validate() const;
};

struct ParamDraw {
  double p = 0.0;
  double psi = 0.0;
  double lambda = 0.0;
  double d = 0.0;
};

struct PosteriorSamples {
  AllocationModel model = AllocationModel::Binomial;
  DataMode mode = DataMode::Secondary;
  std::vector<ParamDraw> draws;
  std::map<std::string, double> acceptance_rates;
  // Thinned latent draws, recorded only on request (one row per kept
  // iteration; empty otherwise).
  std::vector<std::vector<std::pair<long, long>>> latent_draws;
};

struct ChainState {
  ModelParams params;
  LatentState latents;
  double log_post = 0.0;
};

// Deterministic feasible starting point: latents inflated by the prior
// mean mortality, p from the pooled sex ratio, psi = 0.
ChainState init_chain(const Dataset& data, AllocationModel model,
                      const PriorConfig& priors, const McmcConfig& config);

// Single-block updates on an explicit state. Each keeps state.log_post
// in sync with complete_data_logposterior.
double gibbs_update_lambda(ChainState& state, const Dataset& data,
                           AllocationModel model, const PriorConfig& priors,
                           Rng& rng);
double gibbs_update_d(ChainState& state, const Dataset& data,
                      AllocationModel model, const PriorConfig& priors,
                      Rng& rng);
// Beta-conjugate draw under the binomial model, random-walk Metropolis on
// logit(p) otherwise. Returns the new p.
double update_p(ChainState& state, const Dataset& data, AllocationModel model,
                const PriorConfig& priors, const McmcConfig& config, Rng& rng);
// Random-walk Metropolis on psi; no-op for the binomial model.
double update_psi(ChainState& state, const Dataset& data,
                  AllocationModel model, const PriorConfig& priors,
                  const McmcConfig& config, Rng& rng);
// One joint (N, M) Metropolis move per clutch; returns accepted count.
std::size_t update_latents(ChainState& state, const Dataset& data,
                           AllocationModel model, Rng& rng);

struct RunOptions {
  bool record_latents = false;
};

// Data-augmentation sampler over (theta, N, M): sweeps cycle
// lambda, d, p, psi, latents. Identical seeds give identical output.
PosteriorSamples run_chain(const Dataset& data, AllocationModel model,
                           const PriorConfig& priors, const McmcConfig& config,
                           const RunOptions& options = {});

// Latent-free Metropolis chain on theta driven by the exact truncated-sum
// marginal likelihood.
PosteriorSamples run_collapsed_chain(const Dataset& data,
                                     AllocationModel model,
                                     const PriorConfig& priors,
                                     const McmcConfig& config,
                                     double eps = kDefaultTruncationEps);

struct ParameterSummary {
  double mean = 0.0;
  double median = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

struct PosteriorSummary {
  double level = 0.95;
  long draw_count = 0;
  std::map<std::string, ParameterSummary> parameters;
};

PosteriorSummary summarize_posterior(const PosteriorSamples& samples,
                                     double level = 0.95);
ParameterSummary summarize_scalar(std::vector<double> values, double level);

// Posterior predictive pmf of the pre-mortality male count in a clutch of
// `eggs` eggs: allocation pmfs averaged over the posterior draws.
std::vector<double> posterior_predictive_allocation(
    const PosteriorSamples& samples, long eggs);

}  // namespace sexalloc
