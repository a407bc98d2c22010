#include "sexalloc/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "sexalloc/errors.hpp"
#include "sexalloc/math_util.hpp"
#include "sexalloc/mortality.hpp"

namespace sexalloc {

void ModelParams::validate(DataMode mode) const {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("params: p must be in (0,1)");
  if (!std::isfinite(psi))
    throw std::invalid_argument("params: psi must be finite");
  if (mode == DataMode::Primary) return;
  if (!(lambda > 0.0))
    throw std::invalid_argument("params: lambda must be > 0");
  if (!(d >= 0.0 && d < 1.0))
    throw std::invalid_argument("params: d must be in [0,1)");
}

void PriorConfig::validate(DataMode mode) const {
  if (!(sigma_psi > 0.0))
    throw std::invalid_argument("priors: sigma_psi must be > 0");
  if (mode == DataMode::Primary) return;
  if (!(lambda_shape > 0.0 && lambda_rate > 0.0))
    throw std::invalid_argument("priors: lambda prior (shape, rate) required");
  if (!(d_alpha > 0.0 && d_beta > 0.0))
    throw std::invalid_argument("priors: d prior (alpha, beta) required");
}

double log_prior(const ModelParams& params, AllocationModel model,
                 const PriorConfig& priors, DataMode mode) {
  priors.validate(mode);
  if (!(params.p > 0.0 && params.p < 1.0)) return kNegInf;
  double lp = 0.0;  // p ~ U[0,1]
  if (model != AllocationModel::Binomial)
    lp += log_normal_pdf(params.psi, 0.0, priors.sigma_psi);
  if (mode == DataMode::Secondary) {
    lp += log_gamma_pdf(params.lambda, priors.lambda_shape, priors.lambda_rate);
    lp += log_beta_pdf(params.d, priors.d_alpha, priors.d_beta);
  }
  return lp;
}

double clutch_marginal_loglik(long n, long m, const ModelParams& params,
                              AllocationModel model, double eps) {
  params.validate();
  if (m < 0 || m > n)
    throw std::invalid_argument("clutch_marginal_loglik: need 0 <= m <= n");
  if (!(eps > 0.0))
    throw std::invalid_argument("clutch_marginal_loglik: eps must be > 0");
  const long max_eggs =
      std::max(n, poisson_truncation_bound(params.lambda, eps));
  const double survive = 1.0 - params.d;
  LogSumExp acc;
  for (long eggs = n; eggs <= max_eggs; ++eggs) {
    const double base = log_poisson_pmf(eggs, params.lambda) +
                        log_binomial_pmf(n, eggs, survive);
    if (base == kNegInf) continue;
    const std::vector<double> pmf =
        allocation_pmf(model, eggs, params.dispersion());
    for (long males = m; males <= m + (eggs - n); ++males) {
      const double mass = pmf[males];
      if (mass <= 0.0) continue;
      acc.add(base + std::log(mass) + log_survivor_pmf(eggs, males, n, m));
    }
  }
  return acc.value();
}

double dataset_loglik(const Dataset& data, const ModelParams& params,
                      AllocationModel model, double eps) {
  DatasetLikelihood eval(data, model, eps);
  return eval.loglik(params);
}

double complete_data_loglik(const Dataset& data, const LatentState& latents,
                            const ModelParams& params, AllocationModel model) {
  params.validate(data.mode);
  if (data.mode == DataMode::Primary) return dataset_loglik(data, params, model);

  if (latents.clutches.size() != data.clutches.size())
    throw std::invalid_argument("complete_data_loglik: latent size mismatch");
  const double survive = 1.0 - params.d;
  std::unordered_map<long, double> log_norm;  // per-N allocation normalizer
  double sum = 0.0;
  for (std::size_t i = 0; i < data.clutches.size(); ++i) {
    const auto [eggs, male_eggs] = latents.clutches[i];
    const long n = data.clutches[i].n;
    const long m = data.clutches[i].m;
    if (!counts_feasible(eggs, male_eggs, n, m)) return kNegInf;
    auto it = log_norm.find(eggs);
    if (it == log_norm.end())
      it = log_norm
               .emplace(eggs, allocation_log_normalizer(model, eggs,
                                                        params.dispersion()))
               .first;
    sum += log_poisson_pmf(eggs, params.lambda) +
           log_allocation_kernel(model, eggs, male_eggs, params.dispersion()) +
           it->second + log_binomial_pmf(n, eggs, survive) +
           log_survivor_pmf(eggs, male_eggs, n, m);
    if (sum == kNegInf) return kNegInf;
  }
  return sum;
}

double complete_data_logposterior(const Dataset& data,
                                  const LatentState& latents,
                                  const ModelParams& params,
                                  AllocationModel model,
                                  const PriorConfig& priors) {
  const double prior = log_prior(params, model, priors, data.mode);
  if (prior == kNegInf) return kNegInf;
  const double lik = complete_data_loglik(data, latents, params, model);
  if (lik == kNegInf) return kNegInf;
  return lik + prior;
}

DatasetLikelihood::DatasetLikelihood(const Dataset& data,
                                     AllocationModel model, double eps)
    : model_(model), eps_(eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("DatasetLikelihood: eps must be in (0,1)");
  data.validate();
  mode_ = data.mode;
  clutch_count_ = data.size();
  std::map<std::pair<long, long>, double> multiplicity;
  for (const auto& r : data.clutches) {
    const long n = mode_ == DataMode::Primary ? *r.eggs : r.n;
    const long m = mode_ == DataMode::Primary ? *r.male_eggs : r.m;
    multiplicity[{n, m}] += 1.0;
  }
  long max_n = 0;
  for (const auto& [nm, w] : multiplicity) {
    ClutchGroup g;
    g.n = nm.first;
    g.m = nm.second;
    g.weight = w;
    groups_.push_back(std::move(g));
    max_n = std::max(max_n, nm.first);
  }
  min_capacity_ = max_n;
  capacity_ = -1;
  ensure_capacity(max_n);
}

void DatasetLikelihood::ensure_capacity(long max_eggs) {
  max_eggs = std::max(max_eggs, min_capacity_);
  if (max_eggs <= capacity_) return;
  if (max_eggs > kMaxClutchSize)
    throw NumericalError("DatasetLikelihood: truncation bound exceeds cap");
  capacity_ = max_eggs;
  if (mode_ == DataMode::Primary) {
    allocation_ready_ = false;
    return;
  }
  for (auto& g : groups_) {
    g.survivor.resize(capacity_ - g.n + 1);
    for (long j = 0; j <= capacity_ - g.n; ++j) {
      auto& row = g.survivor[j];
      if (!row.empty()) continue;  // already filled at smaller capacity
      const long eggs = g.n + j;
      row.resize(j + 1);
      for (long off = 0; off <= j; ++off)
        row[off] = survivor_pmf(eggs, g.m + off, g.n, g.m);
    }
  }
  allocation_ready_ = false;
}

void DatasetLikelihood::set_allocation(double p, double psi) {
  if (have_params_ && p == p_ && psi == psi_) return;
  DispersionParams dp{p, psi};
  dp.validate();
  p_ = p;
  psi_ = psi;
  have_params_ = true;
  allocation_ready_ = false;
}

void DatasetLikelihood::rebuild_allocation() {
  const DispersionParams dp{p_, psi_};
  alloc_rows_.resize(capacity_ + 1);
  for (long eggs = 0; eggs <= capacity_; ++eggs)
    alloc_rows_[eggs] = allocation_pmf(model_, eggs, dp);
  if (mode_ == DataMode::Secondary) {
    for (auto& g : groups_) {
      g.alloc_mass.assign(capacity_ - g.n + 1, 0.0);
      for (long j = 0; j <= capacity_ - g.n; ++j) {
        const auto& pmf = alloc_rows_[g.n + j];
        const auto& surv = g.survivor[j];
        double s = 0.0;
        for (long off = 0; off <= j; ++off) s += pmf[g.m + off] * surv[off];
        g.alloc_mass[j] = s;
      }
    }
  }
  allocation_ready_ = true;
}

long DatasetLikelihood::truncation_bound(double lambda) {
  // The bound is monotone in lambda, so a cached bound for a larger
  // lambda stays valid; recompute only when lambda grows past the cached
  // value or shrinks enough that the extra terms are wasted work.
  if (bound_lambda_ > 0.0 && lambda <= bound_lambda_ &&
      lambda > 0.25 * bound_lambda_)
    return bound_;
  bound_lambda_ = lambda;
  bound_ = poisson_truncation_bound(lambda, eps_);
  return bound_;
}

double DatasetLikelihood::loglik(const ModelParams& params) {
  params.validate(mode_);
  set_allocation(params.p, params.psi);
  return loglik(params.lambda, params.d);
}

double DatasetLikelihood::loglik(double lambda, double d) {
  if (!have_params_)
    throw std::logic_error("DatasetLikelihood: set_allocation first");
  if (mode_ == DataMode::Primary) {
    if (!allocation_ready_) rebuild_allocation();
    double total = 0.0;
    for (const auto& g : groups_) {
      const double mass = alloc_rows_[g.n][g.m];
      if (mass <= 0.0) return kNegInf;
      total += g.weight * std::log(mass);
    }
    return total;
  }
  if (!(lambda > 0.0) || !(d >= 0.0 && d < 1.0))
    throw std::invalid_argument("DatasetLikelihood: bad (lambda, d)");
  ensure_capacity(truncation_bound(lambda));
  if (!allocation_ready_) rebuild_allocation();

  const long top = std::min(capacity_, std::max(bound_, min_capacity_));
  const double log_lambda = std::log(lambda);
  const double log_d = d > 0.0 ? std::log(d) : kNegInf;
  const double log_s = std::log1p(-d);

  // Scaled-linear sweep per clutch group: log weights
  //   w(N) = Po(N; lambda) Bin(n; N, 1-d)
  // follow the recurrence logw(N+1) = logw(N) + log(lambda d) - log(N+1-n),
  // evaluated against the cached allocation mass g(N).
  double total = 0.0;
  scratch_.resize(top + 1);
  long cached_n = -1;
  double anchor = 0.0;
  long count = 0;
  for (const auto& g : groups_) {
    if (g.n != cached_n) {
      cached_n = g.n;
      const double n = static_cast<double>(g.n);
      double lw = -lambda + n * log_lambda - log_factorial(g.n) + n * log_s;
      double max_lw = lw;
      scratch_[0] = lw;
      count = top - g.n;
      for (long j = 1; j <= count; ++j) {
        lw += log_lambda + log_d - log_integer(j);
        scratch_[j] = lw;
        max_lw = std::max(max_lw, lw);
      }
      anchor = max_lw;
      for (long j = 0; j <= count; ++j) {
        const double delta = scratch_[j] - anchor;
        scratch_[j] = delta > -745.0 ? std::exp(delta) : 0.0;
      }
    }
    double mass = 0.0;
    const long jmax = std::min<long>(count, static_cast<long>(g.alloc_mass.size()) - 1);
    for (long j = 0; j <= jmax; ++j) mass += scratch_[j] * g.alloc_mass[j];
    if (mass > 0.0) {
      total += g.weight * (anchor + std::log(mass));
      continue;
    }
    // Underflow guard: redo this group fully in log space.
    LogSumExp acc;
    for (long j = 0; j <= jmax; ++j) {
      const long eggs = g.n + j;
      const double base = log_poisson_pmf(eggs, lambda) +
                          log_binomial_pmf(g.n, eggs, 1.0 - d);
      if (base == kNegInf || g.alloc_mass[j] <= 0.0) continue;
      acc.add(base + std::log(g.alloc_mass[j]));
    }
    const double value = acc.value();
    if (value == kNegInf) return kNegInf;
    total += g.weight * value;
  }
  return total;
}

}  // namespace sexalloc
