#include "sexalloc/evidence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chain_detail.hpp"
#include "sexalloc/errors.hpp"
#include "sexalloc/math_util.hpp"

namespace sexalloc {

namespace {

using detail::AugmentedChain;
using detail::block_prior_eta;
using detail::block_to_eta;
using detail::BlockFlags;
using detail::blocks_active;
using detail::CollapsedChain;
using detail::kBlockNames;
using detail::kD;
using detail::kLambda;
using detail::kP;
using detail::kPsi;

// Batch-means standard error of log(mean(terms)) for a correlated series.
double log_mean_se(const std::vector<double>& terms) {
  if (terms.size() < 2) return 0.0;
  const std::size_t batches = std::min<std::size_t>(20, terms.size());
  const std::size_t len = terms.size() / batches;
  std::vector<double> means;
  means.reserve(batches);
  for (std::size_t b = 0; b < batches; ++b) {
    double sum = 0.0;
    for (std::size_t i = b * len; i < (b + 1) * len; ++i) sum += terms[i];
    means.push_back(sum / static_cast<double>(len));
  }
  double grand = 0.0;
  for (double m : means) grand += m;
  grand /= static_cast<double>(batches);
  if (!(grand > 0.0)) return 0.0;
  double ss = 0.0;
  for (double m : means) ss += (m - grand) * (m - grand);
  const double var_mean = ss / static_cast<double>(batches - 1) /
                          static_cast<double>(batches);
  return std::sqrt(var_mean) / grand;  // delta method for the log
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) /
         static_cast<double>(v.size());
}

std::vector<int> ordered_blocks(AllocationModel model, DataMode mode) {
  const auto active = blocks_active(model, mode);
  std::vector<int> blocks;
  for (int b = 0; b < 4; ++b)
    if (active[b]) blocks.push_back(b);
  return blocks;
}

ModelParams pilot_posterior_mean(const PosteriorSamples& pilot) {
  ModelParams mean{0.0, 0.0, 0.0, 0.0};
  const double inv = 1.0 / static_cast<double>(pilot.draws.size());
  for (const auto& d : pilot.draws) {
    mean.p += d.p * inv;
    mean.psi += d.psi * inv;
    mean.lambda += d.lambda * inv;
    mean.d += d.d * inv;
  }
  return mean;
}

void check_theta_star(const ModelParams& star, DataMode mode) {
  const bool interior_p = star.p > 1e-8 && star.p < 1.0 - 1e-8;
  bool ok = interior_p;
  if (mode == DataMode::Secondary)
    ok = ok && star.lambda > 0.0 && star.d > 1e-10 && star.d < 1.0 - 1e-10;
  if (!ok)
    throw NumericalError("chib_evidence: theta* lies on a prior boundary");
}

EvidenceEstimate empty_dataset_evidence(const Dataset& data,
                                        AllocationModel model,
                                        const PriorConfig& priors,
                                        EvidenceMethod method) {
  EvidenceEstimate est;
  est.log_evidence = 0.0;  // the likelihood of no observations is 1
  est.mc_se = 0.0;
  est.method = method;
  est.model = model;
  est.digest = digest_of(data);
  est.theta_star.p = 0.5;
  est.theta_star.psi = 0.0;
  if (data.mode == DataMode::Secondary) {
    est.theta_star.lambda = priors.lambda_shape / priors.lambda_rate;
    est.theta_star.d = priors.d_alpha / (priors.d_alpha + priors.d_beta);
  }
  return est;
}

struct Ordinate {
  double log_value = 0.0;
  double se_log = 0.0;
};

// ---- collapsed-chain ordinates -----------------------------------------

ChibResult chib_collapsed(const Dataset& data, AllocationModel model,
                          const PriorConfig& priors, const ChibConfig& config) {
  const McmcConfig& mc = config.mcmc;
  const std::vector<int> blocks = ordered_blocks(model, data.mode);

  // Pilot run: adaptive burn-in, then frozen scales.
  CollapsedChain pilot(data, model, priors, mc, config.eps);
  pilot.init(init_chain(data, model, priors, mc).params);
  Rng rng(mc.seed);
  PosteriorSamples pilot_samples;
  pilot_samples.model = model;
  pilot_samples.mode = data.mode;
  for (long t = 1; t <= mc.iterations; ++t) {
    pilot.sweep(rng, mc.adapt && t <= mc.burn_in);
    if (t > mc.burn_in && (t - mc.burn_in) % mc.thin == 0) {
      const ModelParams& cur = pilot.params();
      pilot_samples.draws.push_back({cur.p, cur.psi, cur.lambda, cur.d});
    }
  }
  for (int b : blocks) {
    pilot_samples.acceptance_rates[kBlockNames[b]] = pilot.acceptance(b);
    if (!(pilot.acceptance(b) > 0.0))
      throw NumericalError("chib_evidence: pilot chain degenerate (block " +
                           std::string(kBlockNames[b]) + ")");
  }

  const ModelParams theta_star = pilot_posterior_mean(pilot_samples);
  check_theta_star(theta_star, data.mode);
  std::array<double, 4> eta_star{};
  std::array<double, 4> scale_star{};
  for (int b : blocks) {
    eta_star[b] = block_to_eta(b, theta_star);
    scale_star[b] = pilot.scale(b);
  }

  const long reduced_iter = config.reduced_iterations > 0
                                ? config.reduced_iterations
                                : mc.iterations - mc.burn_in;
  const long reduced_burn =
      config.reduced_burn_in > 0 ? config.reduced_burn_in : reduced_iter / 5;

  const std::size_t nblocks = blocks.size();
  std::vector<std::vector<double>> num_terms(nblocks), den_terms(nblocks);

  for (std::size_t j = 0; j <= nblocks; ++j) {
    CollapsedChain chain(data, model, priors, mc, config.eps);
    BlockFlags fixed;
    for (std::size_t i = 0; i < j; ++i) fixed[blocks[i]] = true;
    chain.set_fixed(fixed);
    for (int b : blocks) chain.set_scale(b, scale_star[b]);
    chain.init(theta_star);
    Rng chain_rng = Rng::stream(mc.seed, 7000 + j);
    const bool want_num = j < nblocks;
    const bool want_den = j >= 1;
    for (long t = 1; t <= reduced_burn + reduced_iter; ++t) {
      chain.sweep(chain_rng, false);
      if (t <= reduced_burn) continue;
      if (want_num) {
        const int k = blocks[j];
        const double lp_cur = chain.logpost();
        const double lp_star = chain.logpost_with(k, eta_star[k]);
        const double alpha = CollapsedChain::accept_prob(lp_cur, lp_star);
        const double q =
            std::exp(log_normal_pdf(eta_star[k], chain.eta(k), scale_star[k]));
        num_terms[j].push_back(alpha * q);
      }
      if (want_den) {
        const int k = blocks[j - 1];
        const double eta_prop = eta_star[k] + scale_star[k] * chain_rng.normal();
        const double lp_cur = chain.logpost();
        const double lp_prop = chain.logpost_with(k, eta_prop);
        den_terms[j - 1].push_back(
            CollapsedChain::accept_prob(lp_cur, lp_prop));
      }
    }
  }

  double log_ordinate_total = 0.0;
  double se_sq = 0.0;
  for (std::size_t j = 0; j < nblocks; ++j) {
    const double num = mean_of(num_terms[j]);
    const double den = mean_of(den_terms[j]);
    if (!(num > 0.0) || !(den > 0.0))
      throw NumericalError("chib_evidence: degenerate posterior ordinate");
    log_ordinate_total += std::log(num) - std::log(den);
    const double se_num = log_mean_se(num_terms[j]);
    const double se_den = log_mean_se(den_terms[j]);
    se_sq += se_num * se_num + se_den * se_den;
  }

  DatasetLikelihood exact(data, model, config.eps);
  ModelParams star = theta_star;
  const double loglik_star = exact.loglik(star);
  double log_prior_eta = 0.0;
  for (int b : blocks) log_prior_eta += block_prior_eta(b, eta_star[b], priors);

  ChibResult result;
  result.estimate.log_evidence = loglik_star + log_prior_eta - log_ordinate_total;
  result.estimate.mc_se = std::sqrt(se_sq);
  result.estimate.theta_star = theta_star;
  result.estimate.method = EvidenceMethod::ChibJeliazkov;
  result.estimate.model = model;
  result.estimate.digest = digest_of(data);
  result.pilot = std::move(pilot_samples);
  return result;
}

// ---- augmented-chain ordinates ------------------------------------------

bool block_is_gibbs(int block, AllocationModel model) {
  if (block == kLambda || block == kD) return true;
  if (block == kP) return model == AllocationModel::Binomial;
  return false;
}

ChibResult chib_augmented(const Dataset& data, AllocationModel model,
                          const PriorConfig& priors, const ChibConfig& config) {
  const McmcConfig& mc = config.mcmc;
  const std::vector<int> blocks = ordered_blocks(model, data.mode);
  const std::size_t nblocks = blocks.size();

  AugmentedChain pilot(data, model, priors, mc,
                       init_chain(data, model, priors, mc));
  Rng rng(mc.seed);
  PosteriorSamples pilot_samples;
  pilot_samples.model = model;
  pilot_samples.mode = data.mode;
  for (long t = 1; t <= mc.iterations; ++t) {
    pilot.sweep(rng, t, mc.adapt && t <= mc.burn_in);
    if (t > mc.burn_in && (t - mc.burn_in) % mc.thin == 0) {
      const ModelParams& cur = pilot.params();
      pilot_samples.draws.push_back({cur.p, cur.psi, cur.lambda, cur.d});
    }
  }
  const ModelParams theta_star = pilot_posterior_mean(pilot_samples);
  check_theta_star(theta_star, data.mode);
  const double scale_p_star = pilot.scale_p();
  const double scale_psi_star = pilot.scale_psi();
  std::array<double, 4> eta_star{};
  for (int b : blocks) eta_star[b] = block_to_eta(b, theta_star);

  const long reduced_iter = config.reduced_iterations > 0
                                ? config.reduced_iterations
                                : mc.iterations - mc.burn_in;
  const long reduced_burn =
      config.reduced_burn_in > 0 ? config.reduced_burn_in : reduced_iter / 5;

  std::vector<std::vector<double>> num_terms(nblocks), den_terms(nblocks);
  const bool last_is_mh = !block_is_gibbs(blocks[nblocks - 1], model);

  for (std::size_t j = 0; j <= nblocks; ++j) {
    const bool want_num = j < nblocks;
    const bool want_den = j >= 1 && !block_is_gibbs(blocks[j - 1], model);
    if (j == nblocks && !last_is_mh) break;
    if (!want_num && !want_den) continue;

    ChainState start = init_chain(data, model, priors, mc);
    ModelParams init_params = theta_star;  // start every run at theta*
    start.params = init_params;
    AugmentedChain chain(data, model, priors, mc, start);
    chain.set_scales(scale_p_star, scale_psi_star);
    BlockFlags fixed;
    for (std::size_t i = 0; i < j; ++i) fixed[blocks[i]] = true;
    chain.set_fixed(fixed);
    Rng chain_rng = Rng::stream(mc.seed, 7300 + j);

    const double deaths_beta_b =
        priors.d_beta + static_cast<double>(chain.sum_n());
    for (long t = 1; t <= reduced_burn + reduced_iter; ++t) {
      chain.sweep(chain_rng, t, false);
      if (t <= reduced_burn) continue;
      if (want_num) {
        const int k = blocks[j];
        if (block_is_gibbs(k, model)) {
          // Rao-Blackwellized conditional density at the starred point.
          double term = 0.0;
          if (k == kLambda) {
            const double shape =
                priors.lambda_shape + static_cast<double>(chain.sum_eggs());
            const double rate = priors.lambda_rate +
                                static_cast<double>(chain.clutch_count());
            term = std::exp(log_gamma_pdf(theta_star.lambda, shape, rate));
          } else if (k == kD) {
            const double deaths =
                static_cast<double>(chain.sum_eggs() - chain.sum_n());
            term = std::exp(log_beta_pdf(theta_star.d,
                                         priors.d_alpha + deaths,
                                         deaths_beta_b));
          } else {  // p under the binomial model
            const double males = static_cast<double>(chain.sum_male_eggs());
            const double females =
                static_cast<double>(chain.sum_eggs() - chain.sum_male_eggs());
            term = std::exp(
                log_beta_pdf(theta_star.p, 1.0 + males, 1.0 + females));
          }
          num_terms[j].push_back(term);
        } else {
          // Chib-Jeliazkov numerator for a Metropolis block.
          const ModelParams& cur = chain.params();
          if (k == kP) {
            const double eta_cur = block_to_eta(kP, cur);
            const double delta =
                chain.alloc_sum_at(theta_star.p, cur.psi) - chain.alloc_sum() +
                std::log(theta_star.p * (1.0 - theta_star.p)) -
                std::log(cur.p * (1.0 - cur.p));
            const double alpha = std::min(1.0, std::exp(delta));
            const double q = std::exp(
                log_normal_pdf(eta_star[kP], eta_cur, scale_p_star));
            num_terms[j].push_back(alpha * q);
          } else {  // psi
            const double delta =
                chain.alloc_sum_at(cur.p, theta_star.psi) - chain.alloc_sum() +
                log_normal_pdf(theta_star.psi, 0.0, priors.sigma_psi) -
                log_normal_pdf(cur.psi, 0.0, priors.sigma_psi);
            const double alpha = std::min(1.0, std::exp(delta));
            const double q = std::exp(
                log_normal_pdf(theta_star.psi, cur.psi, scale_psi_star));
            num_terms[j].push_back(alpha * q);
          }
        }
      }
      if (want_den) {
        const int k = blocks[j - 1];
        const ModelParams& cur = chain.params();
        if (k == kP) {
          const double eta_prop =
              eta_star[kP] + scale_p_star * chain_rng.normal();
          const double p_prop = detail::expit(eta_prop);
          const double delta =
              chain.alloc_sum_at(p_prop, cur.psi) - chain.alloc_sum() +
              std::log(p_prop * (1.0 - p_prop)) -
              std::log(cur.p * (1.0 - cur.p));
          den_terms[j - 1].push_back(std::min(1.0, std::exp(delta)));
        } else {  // psi
          const double psi_prop =
              theta_star.psi + scale_psi_star * chain_rng.normal();
          const double delta =
              chain.alloc_sum_at(cur.p, psi_prop) - chain.alloc_sum() +
              log_normal_pdf(psi_prop, 0.0, priors.sigma_psi) -
              log_normal_pdf(cur.psi, 0.0, priors.sigma_psi);
          den_terms[j - 1].push_back(std::min(1.0, std::exp(delta)));
        }
      }
    }
  }

  double log_ordinate_total = 0.0;
  double se_sq = 0.0;
  for (std::size_t j = 0; j < nblocks; ++j) {
    const int k = blocks[j];
    const double num = mean_of(num_terms[j]);
    if (!(num > 0.0))
      throw NumericalError("chib_evidence: degenerate posterior ordinate");
    double log_ord = std::log(num);
    double se = log_mean_se(num_terms[j]);
    if (!block_is_gibbs(k, model)) {
      const double den = mean_of(den_terms[j]);
      if (!(den > 0.0))
        throw NumericalError("chib_evidence: degenerate posterior ordinate");
      log_ord -= std::log(den);
      const double se_den = log_mean_se(den_terms[j]);
      se = std::sqrt(se * se + se_den * se_den);
    }
    log_ordinate_total += log_ord;
    se_sq += se * se;
  }

  // Gibbs ordinates live in the original parameterization, Metropolis
  // ordinates in the transformed one; the prior factors must match.
  double log_prior_total = 0.0;
  for (int b : blocks) {
    if (block_is_gibbs(b, model)) {
      if (b == kLambda)
        log_prior_total += log_gamma_pdf(theta_star.lambda, priors.lambda_shape,
                                         priors.lambda_rate);
      else if (b == kD)
        log_prior_total +=
            log_beta_pdf(theta_star.d, priors.d_alpha, priors.d_beta);
      // p under the binomial model: uniform prior density 1
    } else {
      log_prior_total += block_prior_eta(b, eta_star[b], priors);
    }
  }

  DatasetLikelihood exact(data, model, config.eps);
  ModelParams star = theta_star;
  const double loglik_star = exact.loglik(star);

  ChibResult result;
  result.estimate.log_evidence =
      loglik_star + log_prior_total - log_ordinate_total;
  result.estimate.mc_se = std::sqrt(se_sq);
  result.estimate.theta_star = theta_star;
  result.estimate.method = EvidenceMethod::ChibJeliazkov;
  result.estimate.model = model;
  result.estimate.digest = digest_of(data);
  result.pilot = std::move(pilot_samples);
  return result;
}

}  // namespace

DatasetDigest digest_of(const Dataset& data) {
  DatasetDigest digest;
  digest.clutches = data.size();
  digest.mode = data.mode;
  for (const auto& r : data.clutches) {
    digest.sum_counts += data.count_of(r);
    digest.sum_males += data.males_of(r);
  }
  return digest;
}

ChibResult chib_evidence_full(const Dataset& data, AllocationModel model,
                              const PriorConfig& priors,
                              const ChibConfig& config) {
  data.validate();
  priors.validate(data.mode);
  config.mcmc.validate();
  if (data.clutches.empty()) {
    ChibResult r;
    r.estimate = empty_dataset_evidence(data, model, priors,
                                        EvidenceMethod::ChibJeliazkov);
    r.pilot.model = model;
    r.pilot.mode = data.mode;
    return r;
  }
  return config.use_augmented ? chib_augmented(data, model, priors, config)
                              : chib_collapsed(data, model, priors, config);
}

EvidenceEstimate chib_evidence(const Dataset& data, AllocationModel model,
                               const PriorConfig& priors,
                               const ChibConfig& config) {
  return chib_evidence_full(data, model, priors, config).estimate;
}

EvidenceEstimate oracle_evidence(const Dataset& data, AllocationModel model,
                                 const PriorConfig& priors,
                                 const GridSpec& grid, double eps) {
  data.validate();
  priors.validate(data.mode);
  if (grid.initial_resolution < 2)
    throw std::invalid_argument("oracle_evidence: resolution too small");

  const bool secondary = data.mode == DataMode::Secondary;
  const bool has_psi = model != AllocationModel::Binomial;

  const auto evaluate = [&](int res) {
    DatasetLikelihood eval(data, model, eps);
    const QuadratureRule p_rule = gauss_legendre(res, 0.0, 1.0);
    QuadratureRule psi_rule;
    if (has_psi)
      psi_rule = gauss_legendre(res, -grid.psi_range_sd * priors.sigma_psi,
                                grid.psi_range_sd * priors.sigma_psi);
    QuadratureRule lambda_rule, d_rule;
    if (secondary) {
      lambda_rule = gauss_legendre(
          res,
          gamma_quantile(grid.tail_mass, priors.lambda_shape,
                         priors.lambda_rate),
          gamma_quantile(1.0 - grid.tail_mass, priors.lambda_shape,
                         priors.lambda_rate));
      d_rule = gauss_legendre(
          res, beta_quantile(grid.tail_mass, priors.d_alpha, priors.d_beta),
          beta_quantile(1.0 - grid.tail_mass, priors.d_alpha, priors.d_beta));
    }

    // Per-axis log(prior density x quadrature weight).
    std::vector<double> lp_p(res), lp_psi, lp_lambda, lp_d;
    for (int i = 0; i < res; ++i)
      lp_p[i] = std::log(p_rule.weights[i]);  // uniform prior
    if (has_psi) {
      lp_psi.resize(res);
      for (int i = 0; i < res; ++i)
        lp_psi[i] = std::log(psi_rule.weights[i]) +
                    log_normal_pdf(psi_rule.nodes[i], 0.0, priors.sigma_psi);
    }
    if (secondary) {
      lp_lambda.resize(res);
      lp_d.resize(res);
      for (int i = 0; i < res; ++i) {
        lp_lambda[i] =
            std::log(lambda_rule.weights[i]) +
            log_gamma_pdf(lambda_rule.nodes[i], priors.lambda_shape,
                          priors.lambda_rate);
        lp_d[i] = std::log(d_rule.weights[i]) +
                  log_beta_pdf(d_rule.nodes[i], priors.d_alpha, priors.d_beta);
      }
    }

    LogSumExp acc;
    const int psi_count = has_psi ? res : 1;
    for (int ip = 0; ip < res; ++ip) {
      for (int is = 0; is < psi_count; ++is) {
        const double psi = has_psi ? psi_rule.nodes[is] : 0.0;
        eval.set_allocation(p_rule.nodes[ip], psi);
        const double outer = lp_p[ip] + (has_psi ? lp_psi[is] : 0.0);
        if (!secondary) {
          const double ll = eval.loglik(1.0, 0.0);
          if (ll != kNegInf) acc.add(ll + outer);
          continue;
        }
        for (int il = 0; il < res; ++il) {
          for (int id = 0; id < res; ++id) {
            const double ll =
                eval.loglik(lambda_rule.nodes[il], d_rule.nodes[id]);
            if (ll == kNegInf) continue;
            acc.add(ll + outer + lp_lambda[il] + lp_d[id]);
          }
        }
      }
    }
    return acc.value();
  };

  int res = grid.initial_resolution;
  double previous = evaluate(res);
  for (int step = 0; step < grid.max_doublings; ++step) {
    res *= 2;
    const double refined = evaluate(res);
    const double change = std::abs(refined - previous);
    if (change < grid.tolerance) {
      EvidenceEstimate est;
      est.log_evidence = refined;
      est.mc_se = change;
      est.method = EvidenceMethod::QuadratureOracle;
      est.model = model;
      est.digest = digest_of(data);
      return est;
    }
    previous = refined;
  }
  throw NumericalError("oracle_evidence: refinement did not converge");
}

double closed_form_binomial_primary_log_evidence(const Dataset& data) {
  if (data.mode != DataMode::Primary)
    throw InputError("closed form requires primary data");
  data.validate();
  long males = 0, females = 0;
  double lc = 0.0;
  for (const auto& r : data.clutches) {
    males += *r.male_eggs;
    females += *r.eggs - *r.male_eggs;
    lc += lchoose(*r.eggs, *r.male_eggs);
  }
  return lc + std::lgamma(static_cast<double>(males) + 1.0) +
         std::lgamma(static_cast<double>(females) + 1.0) -
         std::lgamma(static_cast<double>(males + females) + 2.0);
}

const char* jeffreys_name(JeffreysCategory c) {
  switch (c) {
    case JeffreysCategory::BarelyWorthMentioning:
      return "barely worth mentioning";
    case JeffreysCategory::Substantial: return "substantial";
    case JeffreysCategory::Strong: return "strong";
    case JeffreysCategory::VeryStrong: return "very strong";
    case JeffreysCategory::Decisive: return "decisive";
  }
  return "unknown";
}

JeffreysCategory jeffreys_category(double bayes_factor) {
  if (!(bayes_factor > 0.0))
    throw std::invalid_argument("jeffreys_category: BF must be > 0");
  const double b = bayes_factor >= 1.0 ? bayes_factor : 1.0 / bayes_factor;
  if (b < 3.0) return JeffreysCategory::BarelyWorthMentioning;
  if (b < 10.0) return JeffreysCategory::Substantial;
  if (b < 30.0) return JeffreysCategory::Strong;
  if (b <= 100.0) return JeffreysCategory::VeryStrong;
  return JeffreysCategory::Decisive;
}

BayesFactor bayes_factor(const EvidenceEstimate& numerator,
                         const EvidenceEstimate& denominator) {
  if (!(numerator.digest == denominator.digest))
    throw InputError("bayes_factor: evidences come from different datasets");
  BayesFactor bf;
  bf.log_bf = numerator.log_evidence - denominator.log_evidence;
  bf.favors_numerator = bf.log_bf >= 0.0;
  bf.category = jeffreys_category(std::exp(bf.log_bf));
  return bf;
}

std::vector<double> model_posterior_probabilities(
    std::span<const double> log_evidences, std::span<const double> weights) {
  if (log_evidences.size() < 2)
    throw std::invalid_argument(
        "model_posterior_probabilities: need >= 2 models");
  if (weights.size() != log_evidences.size())
    throw std::invalid_argument(
        "model_posterior_probabilities: size mismatch");
  double wsum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0))
      throw std::invalid_argument(
          "model_posterior_probabilities: negative weight");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-9)
    throw std::invalid_argument(
        "model_posterior_probabilities: weights must sum to 1");
  std::vector<double> scores(log_evidences.size());
  double max = kNegInf;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    scores[i] = log_evidences[i] + std::log(weights[i]);
    max = std::max(max, scores[i]);
  }
  double total = 0.0;
  for (double& s : scores) {
    s = std::exp(s - max);
    total += s;
  }
  for (double& s : scores) s /= total;
  return scores;
}

}  // namespace sexalloc
