#include "sexalloc/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chain_detail.hpp"
#include "sexalloc/errors.hpp"
#include "sexalloc/math_util.hpp"
#include "sexalloc/mortality.hpp"

namespace sexalloc {

void McmcConfig::validate() const {
  if (iterations < 1) throw std::invalid_argument("mcmc: iterations < 1");
  if (burn_in < 0 || burn_in >= iterations)
    throw std::invalid_argument("mcmc: need 0 <= burn_in < iterations");
  if (thin < 1) throw std::invalid_argument("mcmc: thin < 1");
  if (latent_step < 1) throw std::invalid_argument("mcmc: latent_step < 1");
  if (!(proposal_scale_p > 0.0) || !(proposal_scale_psi > 0.0) ||
      !(proposal_scale_lambda > 0.0) || !(proposal_scale_d > 0.0))
    throw std::invalid_argument("mcmc: proposal scales must be > 0");
}

ChainState init_chain(const Dataset& data, AllocationModel model,
                      const PriorConfig& priors, const McmcConfig& config) {
  config.validate();
  data.validate();
  priors.validate(data.mode);
  ChainState state;
  if (data.mode == DataMode::Primary) {
    long sum_eggs = 0, sum_males = 0;
    for (const auto& r : data.clutches) {
      state.latents.clutches.emplace_back(*r.eggs, *r.male_eggs);
      sum_eggs += *r.eggs;
      sum_males += *r.male_eggs;
    }
    if (!data.clutches.empty() && sum_eggs == 0)
      throw InputError("init_chain: no offspring, cannot initialize p");
    const double ratio =
        sum_eggs > 0
            ? static_cast<double>(sum_males) / static_cast<double>(sum_eggs)
            : 0.5;
    state.params.p = std::clamp(ratio, 0.01, 0.99);
    state.params.psi = 0.0;
    state.params.lambda = 1.0;
    state.params.d = 0.0;
    state.log_post =
        complete_data_logposterior(data, state.latents, state.params, model,
                                    priors);
    return state;
  }

  long sum_n = 0, sum_m = 0;
  for (const auto& r : data.clutches) {
    sum_n += r.n;
    sum_m += r.m;
  }
  if (!data.clutches.empty() && sum_n == 0)
    throw InputError("init_chain: no surviving offspring, cannot initialize p");
  const double d0 = priors.d_alpha / (priors.d_alpha + priors.d_beta);
  const double ratio =
      sum_n > 0 ? static_cast<double>(sum_m) / static_cast<double>(sum_n)
                : 0.5;
  long sum_eggs = 0;
  for (const auto& r : data.clutches) {
    const long extra = std::lround(static_cast<double>(r.n) * d0 / (1.0 - d0));
    const long eggs = r.n + std::max<long>(extra, 0);
    const long lost = eggs - r.n;
    const long extra_males =
        std::min(lost, std::lround(static_cast<double>(lost) * ratio));
    state.latents.clutches.emplace_back(eggs, r.m + extra_males);
    sum_eggs += eggs;
  }
  state.params.p = std::clamp(ratio, 0.01, 0.99);
  state.params.psi = 0.0;
  state.params.lambda =
      sum_eggs > 0 ? static_cast<double>(sum_eggs) /
                         static_cast<double>(data.clutches.size())
                   : priors.lambda_shape / priors.lambda_rate;
  state.params.d = d0;
  state.log_post = complete_data_logposterior(data, state.latents,
                                              state.params, model, priors);
  return state;
}

namespace detail {

AugmentedChain::AugmentedChain(const Dataset& data, AllocationModel model,
                               const PriorConfig& priors,
                               const McmcConfig& config, ChainState init)
    : data_(data),
      model_(model),
      priors_(priors),
      mode_(data.mode),
      params_(init.params),
      latents_(init.latents.clutches),
      scale_p_(config.proposal_scale_p),
      scale_psi_(config.proposal_scale_psi),
      latent_step_(config.latent_step) {
  config.validate();
  priors_.validate(mode_);
  params_.validate(mode_);
  if (latents_.size() != data_.clutches.size())
    throw std::invalid_argument("AugmentedChain: latent size mismatch");
  for (std::size_t i = 0; i < latents_.size(); ++i) {
    const auto [eggs, males] = latents_[i];
    if (!counts_feasible(eggs, males, data_.clutches[i].n, data_.clutches[i].m))
      throw std::invalid_argument("AugmentedChain: infeasible initial latents");
    sum_eggs_ += eggs;
    sum_male_eggs_ += males;
    sum_n_ += data_.clutches[i].n;
    sum_m_ += data_.clutches[i].m;
  }
  refresh_allocation_cache();
}

double AugmentedChain::log_normalizer(long eggs) {
  if (model_ == AllocationModel::Binomial || params_.psi == 0.0) return 0.0;
  auto it = lognorm_.find(eggs);
  if (it != lognorm_.end()) return it->second;
  const double value =
      allocation_log_normalizer(model_, eggs, params_.dispersion());
  lognorm_.emplace(eggs, value);
  return value;
}

void AugmentedChain::refresh_allocation_cache() {
  lognorm_.clear();
  sum_alloc_ = 0.0;
  if (model_ == AllocationModel::Binomial) return;  // nothing depends on it
  for (const auto& [eggs, males] : latents_)
    sum_alloc_ +=
        log_allocation_kernel(model_, eggs, males, params_.dispersion()) +
        log_normalizer(eggs);
}

double AugmentedChain::alloc_sum_at(double p, double psi) const {
  const DispersionParams dp{p, psi};
  std::unordered_map<long, double> norm;
  double sum = 0.0;
  for (const auto& [eggs, males] : latents_) {
    auto it = norm.find(eggs);
    if (it == norm.end())
      it = norm.emplace(eggs, allocation_log_normalizer(model_, eggs, dp))
               .first;
    sum += log_allocation_kernel(model_, eggs, males, dp) + it->second;
  }
  return sum;
}

double AugmentedChain::draw_lambda(Rng& rng) {
  if (mode_ == DataMode::Primary)
    throw std::logic_error("lambda block absent for primary data");
  const double shape = priors_.lambda_shape + static_cast<double>(sum_eggs_);
  const double rate =
      priors_.lambda_rate + static_cast<double>(latents_.size());
  params_.lambda = rng.gamma(shape, rate);
  return params_.lambda;
}

double AugmentedChain::draw_d(Rng& rng) {
  if (mode_ == DataMode::Primary)
    throw std::logic_error("d block absent for primary data");
  const double deaths = static_cast<double>(sum_eggs_ - sum_n_);
  params_.d = rng.beta(priors_.d_alpha + deaths,
                       priors_.d_beta + static_cast<double>(sum_n_));
  return params_.d;
}

double AugmentedChain::draw_p(Rng& rng, bool adapting) {
  if (model_ == AllocationModel::Binomial) {
    // Uniform prior, binomial allocation: exact conjugate draw.
    const double males = static_cast<double>(sum_male_eggs_);
    const double females = static_cast<double>(sum_eggs_ - sum_male_eggs_);
    params_.p = rng.beta(1.0 + males, 1.0 + females);
    refresh_allocation_cache();
    return params_.p;
  }
  ++try_p_;
  const double eta = logit(params_.p);
  const double eta_new = eta + scale_p_ * rng.normal();
  const double p_new = expit(eta_new);
  double alpha = 0.0;
  if (p_new > 0.0 && p_new < 1.0) {
    const double proposal_sum = alloc_sum_at(p_new, params_.psi);
    // Uniform prior on p; the logit Jacobian p(1-p) remains.
    const double delta = proposal_sum - sum_alloc_ +
                         std::log(p_new * (1.0 - p_new)) -
                         std::log(params_.p * (1.0 - params_.p));
    alpha = std::min(1.0, std::exp(delta));
    if (rng.u01() < alpha) {
      params_.p = p_new;
      refresh_allocation_cache();
      ++acc_p_;
    }
  }
  if (adapting) adapt_scale(scale_p_, alpha, ++adapt_p_count_);
  return params_.p;
}

double AugmentedChain::draw_psi(Rng& rng, bool adapting) {
  if (model_ == AllocationModel::Binomial)
    throw std::logic_error("psi block absent for the binomial model");
  ++try_psi_;
  const double psi_new = params_.psi + scale_psi_ * rng.normal();
  const double proposal_sum = alloc_sum_at(params_.p, psi_new);
  const double delta = proposal_sum - sum_alloc_ +
                       log_normal_pdf(psi_new, 0.0, priors_.sigma_psi) -
                       log_normal_pdf(params_.psi, 0.0, priors_.sigma_psi);
  const double alpha = std::min(1.0, std::exp(delta));
  if (rng.u01() < alpha) {
    params_.psi = psi_new;
    refresh_allocation_cache();
    ++acc_psi_;
  }
  if (adapting) adapt_scale(scale_psi_, alpha, ++adapt_psi_count_);
  return params_.psi;
}

bool AugmentedChain::latent_move(std::size_t i, Rng& rng) {
  const long n = data_.clutches[i].n;
  const long m = data_.clutches[i].m;
  const auto [eggs, males] = latents_[i];
  const bool up = rng.bernoulli(0.5);
  long eggs_new = eggs + (up ? 1 : -1);
  if (eggs_new < n) eggs_new = eggs + 1;  // reflect at the lower bound

  // Windowed male-count proposal: the allocation kernel restricted to
  // the survivor-feasible range [m, m + N' - n]. The per-N normalizing
  // constant cancels inside the window.
  const DispersionParams dp = params_.dispersion();
  const long width_new = eggs_new - n;
  std::vector<double> logk(width_new + 1);
  double max_logk = kNegInf;
  for (long off = 0; off <= width_new; ++off) {
    logk[off] = log_allocation_kernel(model_, eggs_new, m + off, dp);
    max_logk = std::max(max_logk, logk[off]);
  }
  double wsum_new = 0.0;
  for (long off = 0; off <= width_new; ++off) {
    logk[off] = std::exp(logk[off] - max_logk);
    wsum_new += logk[off];
  }
  const double u = rng.u01() * wsum_new;
  long pick = 0;
  double cum = 0.0;
  for (long off = 0; off <= width_new; ++off) {
    cum += logk[off];
    if (u < cum || off == width_new) {
      pick = off;
      break;
    }
  }
  const long males_new = m + pick;
  const double log_wsum_new = std::log(wsum_new) + max_logk;

  // Reverse-window sum at the current N.
  const long width_cur = eggs - n;
  LogSumExp wcur;
  for (long off = 0; off <= width_cur; ++off)
    wcur.add(log_allocation_kernel(model_, eggs, m + off, dp));
  const double log_wsum_cur = wcur.value();

  const double log_q_fwd = eggs == n ? 0.0 : std::log(0.5);
  const double log_q_rev = eggs_new == n ? 0.0 : std::log(0.5);

  double delta =
      log_poisson_pmf(eggs_new, params_.lambda) -
      log_poisson_pmf(eggs, params_.lambda) +
      log_binomial_pmf(n, eggs_new, 1.0 - params_.d) -
      log_binomial_pmf(n, eggs, 1.0 - params_.d) +
      log_survivor_pmf(eggs_new, males_new, n, m) -
      log_survivor_pmf(eggs, males, n, m) + log_normalizer(eggs_new) -
      log_normalizer(eggs) + log_wsum_new - log_wsum_cur + log_q_rev -
      log_q_fwd;
  if (!(std::log(rng.u01_open()) < delta)) return false;

  if (model_ != AllocationModel::Binomial) {
    const double alloc_new =
        log_allocation_kernel(model_, eggs_new, males_new, dp) +
        log_normalizer(eggs_new);
    const double alloc_old =
        log_allocation_kernel(model_, eggs, males, dp) + log_normalizer(eggs);
    sum_alloc_ += alloc_new - alloc_old;
  }
  sum_eggs_ += eggs_new - eggs;
  sum_male_eggs_ += males_new - males;
  latents_[i] = {eggs_new, males_new};
  return true;
}

std::size_t AugmentedChain::sweep_latents(Rng& rng) {
  if (mode_ == DataMode::Primary) return 0;
  std::size_t accepted = 0;
  for (std::size_t i = 0; i < latents_.size(); ++i) {
    ++try_lat_;
    if (latent_move(i, rng)) {
      ++accepted;
      ++acc_lat_;
    }
  }
  return accepted;
}

void AugmentedChain::sweep(Rng& rng, long iteration, bool adapting) {
  if (mode_ == DataMode::Secondary) {
    if (!fixed_[kLambda]) draw_lambda(rng);
    if (!fixed_[kD]) draw_d(rng);
  }
  if (!fixed_[kP]) draw_p(rng, adapting);
  if (model_ != AllocationModel::Binomial && !fixed_[kPsi])
    draw_psi(rng, adapting);
  if (mode_ == DataMode::Secondary && iteration % latent_step_ == 0)
    sweep_latents(rng);
  ++sweep_count_;
}

void AugmentedChain::adapt_scale(double& scale, double alpha, long count) {
  const double gamma =
      std::min(0.25, 1.0 / std::pow(static_cast<double>(count), 0.6));
  scale *= std::exp(gamma * (alpha - 0.44));
  scale = std::clamp(scale, 1e-3, 50.0);
}

ChainState AugmentedChain::snapshot() const {
  ChainState state;
  state.params = params_;
  state.latents.clutches = latents_;
  state.log_post = complete_data_logposterior(data_, state.latents, params_,
                                              model_, priors_);
  return state;
}

double AugmentedChain::acceptance(const char* block) const {
  const auto rate = [](long acc, long tries) {
    return tries > 0 ? static_cast<double>(acc) / static_cast<double>(tries)
                     : 0.0;
  };
  const std::string b = block;
  if (b == "p")
    return model_ == AllocationModel::Binomial ? 1.0 : rate(acc_p_, try_p_);
  if (b == "psi") return rate(acc_psi_, try_psi_);
  if (b == "latents") return rate(acc_lat_, try_lat_);
  return 1.0;  // Gibbs blocks
}

double block_to_eta(int block, const ModelParams& params) {
  switch (block) {
    case kLambda: return std::log(params.lambda);
    case kD: return logit(params.d);
    case kP: return logit(params.p);
    default: return params.psi;
  }
}

ModelParams block_with_eta(int block, double eta, ModelParams params) {
  switch (block) {
    case kLambda: params.lambda = std::exp(eta); break;
    case kD: params.d = expit(eta); break;
    case kP: params.p = expit(eta); break;
    default: params.psi = eta; break;
  }
  return params;
}

double block_prior_eta(int block, double eta, const PriorConfig& priors) {
  switch (block) {
    case kLambda: {
      const double lambda = std::exp(eta);
      return log_gamma_pdf(lambda, priors.lambda_shape, priors.lambda_rate) +
             eta;
    }
    case kD: {
      const double d = expit(eta);
      return log_beta_pdf(d, priors.d_alpha, priors.d_beta) +
             std::log(d * (1.0 - d));
    }
    case kP: {
      const double p = expit(eta);
      return std::log(p * (1.0 - p));  // uniform prior through the logit
    }
    default:
      return log_normal_pdf(eta, 0.0, priors.sigma_psi);
  }
}

std::array<bool, 4> blocks_active(AllocationModel model, DataMode mode) {
  std::array<bool, 4> active{};
  active[kLambda] = mode == DataMode::Secondary;
  active[kD] = mode == DataMode::Secondary;
  active[kP] = true;
  active[kPsi] = model != AllocationModel::Binomial;
  return active;
}

CollapsedChain::CollapsedChain(const Dataset& data, AllocationModel model,
                               const PriorConfig& priors,
                               const McmcConfig& config, double eps)
    : model_(model),
      priors_(priors),
      mode_(data.mode),
      eval_cur_(data, model, eps),
      eval_scratch_(data, model, eps) {
  config.validate();
  priors_.validate(mode_);
  active_ = blocks_active(model, mode_);
  scales_[kLambda] = config.proposal_scale_lambda;
  scales_[kD] = config.proposal_scale_d;
  scales_[kP] = config.proposal_scale_p;
  scales_[kPsi] = config.proposal_scale_psi;
}

void CollapsedChain::init(const ModelParams& start) {
  params_ = start;
  params_.validate(mode_);
  if (mode_ == DataMode::Secondary && !(params_.d > 0.0))
    throw std::invalid_argument("CollapsedChain: d must be interior");
  for (int b = 0; b < 4; ++b)
    if (active_[b]) eta_[b] = block_to_eta(b, params_);
  cur_loglik_ = eval_loglik(params_, false);
}

double CollapsedChain::eval_loglik(const ModelParams& candidate, bool scratch) {
  DatasetLikelihood& eval = scratch ? eval_scratch_ : eval_cur_;
  eval.set_allocation(candidate.p, candidate.psi);
  return eval.loglik(candidate.lambda, candidate.d);
}

double CollapsedChain::logpost() const {
  double lp = cur_loglik_;
  for (int b = 0; b < 4; ++b)
    if (active_[b]) lp += block_prior_eta(b, eta_[b], priors_);
  return lp;
}

double CollapsedChain::logpost_with(int block, double eta) {
  const ModelParams candidate = block_with_eta(block, eta, params_);
  const bool scratch = block == kP || block == kPsi;
  const double ll = eval_loglik(candidate, scratch);
  double lp = ll;
  for (int b = 0; b < 4; ++b)
    if (active_[b]) lp += block_prior_eta(b, b == block ? eta : eta_[b], priors_);
  return lp;
}

double CollapsedChain::accept_prob(double logpost_from, double logpost_to) {
  if (logpost_to == kNegInf) return 0.0;
  if (logpost_from == kNegInf) return 1.0;
  return std::min(1.0, std::exp(logpost_to - logpost_from));
}

void CollapsedChain::adapt_scale(int block, double alpha) {
  const double count = static_cast<double>(++adapt_count_[block]);
  const double gamma = std::min(0.25, 1.0 / std::pow(count, 0.6));
  scales_[block] *= std::exp(gamma * (alpha - 0.44));
  scales_[block] = std::clamp(scales_[block], 1e-3, 50.0);
}

void CollapsedChain::sweep(Rng& rng, bool adapting) {
  for (int b = 0; b < 4; ++b) {
    if (!active_[b] || fixed_[b]) continue;
    ++proposed_[b];
    const double eta_new = eta_[b] + scales_[b] * rng.normal();
    const ModelParams candidate = block_with_eta(b, eta_new, params_);
    const bool scratch = b == kP || b == kPsi;
    const double ll_new = eval_loglik(candidate, scratch);
    const double delta = ll_new + block_prior_eta(b, eta_new, priors_) -
                         (cur_loglik_ + block_prior_eta(b, eta_[b], priors_));
    const double alpha =
        ll_new == kNegInf ? 0.0 : std::min(1.0, std::exp(delta));
    if (rng.u01() < alpha) {
      params_ = candidate;
      eta_[b] = eta_new;
      cur_loglik_ = ll_new;
      if (scratch) std::swap(eval_cur_, eval_scratch_);
      ++accepted_[b];
    }
    if (adapting) adapt_scale(b, alpha);
  }
}

double CollapsedChain::acceptance(int block) const {
  return proposed_[block] > 0 ? static_cast<double>(accepted_[block]) /
                                    static_cast<double>(proposed_[block])
                              : 0.0;
}

}  // namespace detail

double gibbs_update_lambda(ChainState& state, const Dataset& data,
                           AllocationModel model, const PriorConfig& priors,
                           Rng& rng) {
  detail::AugmentedChain chain(data, model, priors, McmcConfig{}, state);
  const double value = chain.draw_lambda(rng);
  state = chain.snapshot();
  return value;
}

double gibbs_update_d(ChainState& state, const Dataset& data,
                      AllocationModel model, const PriorConfig& priors,
                      Rng& rng) {
  detail::AugmentedChain chain(data, model, priors, McmcConfig{}, state);
  const double value = chain.draw_d(rng);
  state = chain.snapshot();
  return value;
}

double update_p(ChainState& state, const Dataset& data, AllocationModel model,
                const PriorConfig& priors, const McmcConfig& config,
                Rng& rng) {
  detail::AugmentedChain chain(data, model, priors, config, state);
  const double value = chain.draw_p(rng);
  state = chain.snapshot();
  return value;
}

double update_psi(ChainState& state, const Dataset& data,
                  AllocationModel model, const PriorConfig& priors,
                  const McmcConfig& config, Rng& rng) {
  detail::AugmentedChain chain(data, model, priors, config, state);
  const double value = chain.draw_psi(rng);
  state = chain.snapshot();
  return value;
}

std::size_t update_latents(ChainState& state, const Dataset& data,
                           AllocationModel model, Rng& rng) {
  // Latent moves leave the prior terms untouched, so log_post can be
  // maintained from the likelihood delta without knowing the priors.
  PriorConfig unit;
  unit.lambda_shape = unit.lambda_rate = unit.d_alpha = unit.d_beta = 1.0;
  detail::AugmentedChain chain(data, model, unit, McmcConfig{}, state);
  const double before =
      complete_data_loglik(data, state.latents, state.params, model);
  const std::size_t accepted = chain.sweep_latents(rng);
  state.latents.clutches = chain.latents();
  const double after =
      complete_data_loglik(data, state.latents, state.params, model);
  state.log_post += after - before;
  return accepted;
}

PosteriorSamples run_chain(const Dataset& data, AllocationModel model,
                           const PriorConfig& priors, const McmcConfig& config,
                           const RunOptions& options) {
  config.validate();
  const ChainState start = init_chain(data, model, priors, config);
  detail::AugmentedChain chain(data, model, priors, config, start);
  Rng rng(config.seed);
  PosteriorSamples out;
  out.model = model;
  out.mode = data.mode;
  const long kept = (config.iterations - config.burn_in) / config.thin;
  out.draws.reserve(kept);
  for (long t = 1; t <= config.iterations; ++t) {
    const bool adapting = config.adapt && t <= config.burn_in;
    chain.sweep(rng, t, adapting);
    if (t > config.burn_in && (t - config.burn_in) % config.thin == 0) {
      const ModelParams& cur = chain.params();
      out.draws.push_back({cur.p, cur.psi, cur.lambda, cur.d});
      if (options.record_latents) out.latent_draws.push_back(chain.latents());
    }
  }
  out.acceptance_rates["p"] = chain.acceptance("p");
  if (model != AllocationModel::Binomial)
    out.acceptance_rates["psi"] = chain.acceptance("psi");
  if (data.mode == DataMode::Secondary) {
    out.acceptance_rates["lambda"] = 1.0;
    out.acceptance_rates["d"] = 1.0;
    out.acceptance_rates["latents"] = chain.acceptance("latents");
  }
  return out;
}

PosteriorSamples run_collapsed_chain(const Dataset& data,
                                     AllocationModel model,
                                     const PriorConfig& priors,
                                     const McmcConfig& config, double eps) {
  config.validate();
  detail::CollapsedChain chain(data, model, priors, config, eps);
  chain.init(init_chain(data, model, priors, config).params);
  Rng rng(config.seed);
  PosteriorSamples out;
  out.model = model;
  out.mode = data.mode;
  const long kept = (config.iterations - config.burn_in) / config.thin;
  out.draws.reserve(kept);
  for (long t = 1; t <= config.iterations; ++t) {
    const bool adapting = config.adapt && t <= config.burn_in;
    chain.sweep(rng, adapting);
    if (t > config.burn_in && (t - config.burn_in) % config.thin == 0) {
      const ModelParams& cur = chain.params();
      out.draws.push_back({cur.p, cur.psi, cur.lambda, cur.d});
    }
  }
  for (int b = 0; b < 4; ++b)
    if (chain.block_active(b))
      out.acceptance_rates[detail::kBlockNames[b]] = chain.acceptance(b);
  return out;
}

ParameterSummary summarize_scalar(std::vector<double> values, double level) {
  if (values.empty())
    throw std::invalid_argument("summarize_scalar: empty sample");
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("summarize_scalar: level must be in (0,1)");
  std::sort(values.begin(), values.end());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  const double tail = 0.5 * (1.0 - level);
  ParameterSummary s;
  s.mean = mean;
  s.median = empirical_quantile(values, 0.5);
  s.lower = empirical_quantile(values, tail);
  s.upper = empirical_quantile(values, 1.0 - tail);
  return s;
}

PosteriorSummary summarize_posterior(const PosteriorSamples& samples,
                                     double level) {
  if (samples.draws.size() < 100)
    throw std::invalid_argument("summarize_posterior: need >= 100 draws");
  PosteriorSummary summary;
  summary.level = level;
  summary.draw_count = static_cast<long>(samples.draws.size());
  const auto extract = [&](auto field) {
    std::vector<double> v;
    v.reserve(samples.draws.size());
    for (const auto& d : samples.draws) v.push_back(field(d));
    return v;
  };
  summary.parameters["p"] =
      summarize_scalar(extract([](const ParamDraw& d) { return d.p; }), level);
  if (samples.model != AllocationModel::Binomial)
    summary.parameters["psi"] = summarize_scalar(
        extract([](const ParamDraw& d) { return d.psi; }), level);
  if (samples.mode == DataMode::Secondary) {
    summary.parameters["lambda"] = summarize_scalar(
        extract([](const ParamDraw& d) { return d.lambda; }), level);
    summary.parameters["d"] = summarize_scalar(
        extract([](const ParamDraw& d) { return d.d; }), level);
  }
  return summary;
}

std::vector<double> posterior_predictive_allocation(
    const PosteriorSamples& samples, long eggs) {
  if (samples.draws.empty())
    throw std::invalid_argument("posterior_predictive_allocation: no draws");
  if (eggs < 0)
    throw std::invalid_argument("posterior_predictive_allocation: eggs < 0");
  std::vector<double> mix(eggs + 1, 0.0);
  for (const auto& draw : samples.draws) {
    const std::vector<double> pmf =
        allocation_pmf(samples.model, eggs, {draw.p, draw.psi});
    for (long k = 0; k <= eggs; ++k) mix[k] += pmf[k];
  }
  const double inv = 1.0 / static_cast<double>(samples.draws.size());
  for (double& v : mix) v *= inv;
  return mix;
}

}  // namespace sexalloc
