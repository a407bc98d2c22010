#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sexalloc/classical.hpp"
#include "sexalloc/evidence.hpp"

namespace sexalloc {

// Synthetic-data generator: clutch sizes Poisson(lambda), male counts
// from the allocation model, then independent per-egg survival.
struct GeneratorSpec {
  long clutch_count = 50;
  double lambda = 10.0;
  AllocationModel model = AllocationModel::MultiplicativeBinomial;
  double p = 0.1;
  double psi = 0.3;
  double death_rate = 0.3;
  std::uint64_t seed = 1;

  void validate() const;
};

// Secondary-mode dataset carrying the hidden primary truth (N, M, deaths)
// alongside the observed (n, m). Fully determined by (spec.seed, replicate).
Dataset simulate_dataset(const GeneratorSpec& spec, std::uint64_t replicate = 0);

enum class ClassicalTest { Meelis, James };

struct PowerGrid {
  std::vector<long> clutch_counts;
  std::vector<double> death_rates;
};
PowerGrid default_power_grid();

struct PowerCell {
  long clutch_count = 0;
  double death_rate = 0.0;
  long replicates = 0;
  long rejections = 0;
  long indeterminate = 0;
  double power = 0.0;
  double se = 0.0;      // binomial standard error of the power estimate
  double mean_ratio = 0.0;      // mean R over replicates where defined
  double mean_mccullagh = 0.0;  // mean s^2 over replicates where defined
};

struct PowerSurface {
  std::string test;
  double alpha = 0.05;
  GeneratorSpec base;
  std::vector<PowerCell> cells;
};

// Rejection rate of the chosen test at the given level over a (C, d)
// grid; indeterminate replicates are retained and counted as
// non-rejections. Replicates are deterministic in (seed, cell, replicate)
// and independent of thread scheduling.
PowerSurface classical_power_surface(const PowerGrid& grid,
                                     const GeneratorSpec& base, long reps,
                                     ClassicalTest test, double alpha,
                                     int threads = 0);

struct StudyRow {
  long replicate = 0;
  bool ok = false;
  std::string error;
  std::optional<double> meelis_p;
  double log_bf = 0.0;          // alternative vs binomial
  double null_probability = 0.0;  // P(binomial | D) under equal priors
  double psi_lower = 0.0;
  double psi_upper = 0.0;
};

struct StudySummary {
  std::vector<StudyRow> rows;
  // Strength-of-evidence buckets, in percent of successful replicates:
  // Meelis p in (>0.1, 0.05-0.1, 0.01-0.05, 0.001-0.01, <0.001) and
  // BF in (0-3, 3-10, 10-30, 30-100, >100).
  std::array<double, 5> meelis_percent{};
  std::array<double, 5> bf_percent{};
  double meelis_reject_rate = 0.0;        // p < 0.05
  double bayes_strong_rate = 0.0;         // P(H0|D) <= 0.05
  double psi_excludes_zero_rate = 0.0;    // 95% interval misses 0
  long failures = 0;
};

// Analysis priors derived from a generator: lambda prior centred on the
// generator mean, d prior centred on the generator mortality rate.
PriorConfig study_default_priors(const GeneratorSpec& spec);

// Paired Meelis / Bayes-factor comparison on replicated synthetic
// datasets: per replicate, the Meelis p-value and the Bayes factor of the
// generating (alternative) model against the binomial model.
StudySummary bayes_vs_meelis_study(long reps, const GeneratorSpec& spec,
                                   const ChibConfig& chib, int threads = 0);

// False-positive study: data generated under the binomial model,
// analysed with the multiplicative alternative.
StudySummary type1_error_study(long reps, const GeneratorSpec& null_spec,
                               const ChibConfig& chib, int threads = 0);

}  // namespace sexalloc
