#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "sexalloc/simulation.hpp"

namespace sexalloc {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

// Comma-separated file with a header row. Secondary mode requires columns
// n,m; primary mode requires N,M; deaths is optional in both. Any
// violation (missing column, non-integer cell, infeasible counts) is
// rejected with the offending line number.
Dataset parse_dataset_csv(const std::filesystem::path& path, DataMode mode);
Dataset parse_dataset_csv_text(const std::string& text, DataMode mode,
                               const std::string& origin = "<memory>");

void write_dataset_csv(const Dataset& data, const std::filesystem::path& path);

struct RunConfig {
  std::vector<AllocationModel> models{AllocationModel::Binomial,
                                      AllocationModel::MultiplicativeBinomial,
                                      AllocationModel::DoubleBinomial};
  DataMode mode = DataMode::Secondary;
  PriorConfig priors;
  McmcConfig mcmc;
  double eps = kDefaultTruncationEps;
  long predictive_eggs = 10;
  bool use_augmented = false;
  int threads = 0;
};

// Classical tests, per-model fits, evidence, Bayes factors against the
// binomial model, model probabilities, predictive pmfs; the report
// carries everything needed to re-run it.
nlohmann::ordered_json analyze_dataset(const Dataset& data,
                                       const RunConfig& config);

nlohmann::ordered_json power_surface_json(const PowerSurface& surface);
std::string power_surface_csv(const PowerSurface& surface);

nlohmann::ordered_json study_summary_json(const StudySummary& summary);
std::string study_rows_csv(const StudySummary& summary);

}  // namespace sexalloc
