#pragma once

// Internal chain machinery shared by the samplers and the evidence
// estimator (which re-runs chains with parameter blocks pinned).

#include <array>
#include <unordered_map>
#include <vector>

#include "sexalloc/mcmc.hpp"

namespace sexalloc::detail {

inline double logit(double x) { return std::log(x / (1.0 - x)); }
inline double expit(double x) { return 1.0 / (1.0 + std::exp(-x)); }

enum Block : int { kLambda = 0, kD = 1, kP = 2, kPsi = 3 };
constexpr std::array<const char*, 4> kBlockNames{"lambda", "d", "p", "psi"};

struct BlockFlags {
  std::array<bool, 4> v{false, false, false, false};
  bool& operator[](int i) { return v[i]; }
  bool operator[](int i) const { return v[i]; }
};

// Transformed coordinates used by the Metropolis blocks:
// log(lambda), logit(d), logit(p), psi (identity).
double block_to_eta(int block, const ModelParams& params);
ModelParams block_with_eta(int block, double eta, ModelParams params);
// Block prior density in the transformed coordinate (prior pdf times the
// Jacobian of the inverse transform).
double block_prior_eta(int block, double eta, const PriorConfig& priors);

// Which blocks exist for a given model and data mode.
std::array<bool, 4> blocks_active(AllocationModel model, DataMode mode);

// Metropolis-within-Gibbs sampler on (theta, N, M) for secondary data;
// degenerates to a (p, psi) sampler when the clutch counts are observed.
class AugmentedChain {
 public:
  AugmentedChain(const Dataset& data, AllocationModel model,
                 const PriorConfig& priors, const McmcConfig& config,
                 ChainState init);

  void set_fixed(const BlockFlags& fixed) { fixed_ = fixed; }
  void set_scales(double scale_p, double scale_psi) {
    scale_p_ = scale_p;
    scale_psi_ = scale_psi;
  }
  double scale_p() const { return scale_p_; }
  double scale_psi() const { return scale_psi_; }

  void sweep(Rng& rng, long iteration, bool adapting);

  double draw_lambda(Rng& rng);
  double draw_d(Rng& rng);
  double draw_p(Rng& rng, bool adapting = false);
  double draw_psi(Rng& rng, bool adapting = false);
  std::size_t sweep_latents(Rng& rng);

  const ModelParams& params() const { return params_; }
  const std::vector<std::pair<long, long>>& latents() const {
    return latents_;
  }
  ChainState snapshot() const;

  long clutch_count() const { return static_cast<long>(latents_.size()); }
  long sum_eggs() const { return sum_eggs_; }
  long sum_male_eggs() const { return sum_male_eggs_; }
  long sum_n() const { return sum_n_; }
  long sum_m() const { return sum_m_; }

  // Sum of allocation log-pmfs at the current latents for arbitrary
  // (p, psi); used by the Metropolis ratio and the evidence ordinates.
  double alloc_sum_at(double p, double psi) const;
  double alloc_sum() const { return sum_alloc_; }

  double acceptance(const char* block) const;

  bool has_latent_block() const { return mode_ == DataMode::Secondary; }
  AllocationModel model() const { return model_; }
  const PriorConfig& priors() const { return priors_; }
  DataMode mode() const { return mode_; }

 private:
  double log_normalizer(long eggs);
  void refresh_allocation_cache();
  bool latent_move(std::size_t i, Rng& rng);
  void adapt_scale(double& scale, double alpha, long count);

  Dataset data_;
  AllocationModel model_;
  PriorConfig priors_;
  DataMode mode_;
  ModelParams params_;
  std::vector<std::pair<long, long>> latents_;
  long sum_eggs_ = 0, sum_male_eggs_ = 0, sum_n_ = 0, sum_m_ = 0;
  double sum_alloc_ = 0.0;
  std::unordered_map<long, double> lognorm_;
  BlockFlags fixed_;
  double scale_p_, scale_psi_;
  long latent_step_;
  long sweep_count_ = 0;
  // acceptance bookkeeping: {p, psi, latents} {accepted, proposed}
  long acc_p_ = 0, try_p_ = 0;
  long acc_psi_ = 0, try_psi_ = 0;
  long acc_lat_ = 0, try_lat_ = 0;
  long adapt_p_count_ = 0, adapt_psi_count_ = 0;
};

// Random-walk Metropolis on transformed theta against the marginal
// likelihood. Coordinates: log(lambda), logit(d), logit(p), psi.
class CollapsedChain {
 public:
  CollapsedChain(const Dataset& data, AllocationModel model,
                 const PriorConfig& priors, const McmcConfig& config,
                 double eps);

  void init(const ModelParams& start);
  void set_fixed(const BlockFlags& fixed) { fixed_ = fixed; }
  bool block_active(int b) const { return active_[b]; }

  void sweep(Rng& rng, bool adapting);

  const ModelParams& params() const { return params_; }
  double loglik() const { return cur_loglik_; }
  // log posterior density in the transformed coordinates (likelihood
  // plus priors mapped through the Jacobians), up to the evidence.
  double logpost() const;

  // Posterior (transformed-space) log density at the current state with
  // one coordinate replaced; the allocation tables of the scratch
  // evaluator are used for p/psi so the current state stays cached.
  double logpost_with(int block, double eta) ;

  // Accept-or-not helper used by the evidence ordinates.
  static double accept_prob(double logpost_from, double logpost_to);

  double eta(int block) const { return eta_[block]; }
  double scale(int block) const { return scales_[block]; }
  void set_scale(int block, double s) { scales_[block] = s; }
  double acceptance(int block) const;

 private:
  double eval_loglik(const ModelParams& candidate, bool scratch);
  void adapt_scale(int block, double alpha);

  AllocationModel model_;
  PriorConfig priors_;
  DataMode mode_;
  ModelParams params_;
  std::array<double, 4> eta_{};
  std::array<bool, 4> active_{};
  BlockFlags fixed_;
  std::array<double, 4> scales_{};
  std::array<long, 4> accepted_{};
  std::array<long, 4> proposed_{};
  std::array<long, 4> adapt_count_{};
  double cur_loglik_ = 0.0;
  DatasetLikelihood eval_cur_;
  DatasetLikelihood eval_scratch_;
};

}  // namespace sexalloc::detail
