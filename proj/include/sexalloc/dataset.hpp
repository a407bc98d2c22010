#pragma once

#include <optional>
#include <vector>

namespace sexalloc {

// One offspring group. Secondary counts (n, m) are the mature survivors;
// primary counts (N, M), when known, are the counts at laying time.
struct ClutchRecord {
  long n = 0;  // brood size at maturity
  long m = 0;  // males at maturity
  std::optional<long> eggs;        // N
  std::optional<long> male_eggs;   // M
  std::optional<long> deaths;      // N - n when only the loss count is known
};

enum class DataMode { Secondary, Primary };

// A clutch (N, M) and its surviving counts (n, m) must satisfy
//   N >= n,  M >= m,  N - n >= M - m.
bool counts_feasible(long eggs, long male_eggs, long n, long m);

struct Dataset {
  std::vector<ClutchRecord> clutches;
  DataMode mode = DataMode::Secondary;

  long size() const { return static_cast<long>(clutches.size()); }
  bool has_primary() const;
  bool has_deaths() const;
  long total_offspring() const;  // sum of n (secondary) or N (primary)
  long total_males() const;      // sum of m (secondary) or M (primary)

  // In primary mode the analysed counts are (N, M); in secondary (n, m).
  long count_of(const ClutchRecord& r) const;
  long males_of(const ClutchRecord& r) const;

  // Throws InputError naming the first offending record (1-based).
  void validate() const;
};

Dataset make_secondary(const std::vector<std::pair<long, long>>& nm);
Dataset make_primary(const std::vector<std::pair<long, long>>& NM);

// Keeps only clutches with deaths == 0 and relabels them as primary data
// (N = n, M = m). Requires the deaths column.
Dataset filter_zero_mortality(const Dataset& data);

}  // namespace sexalloc
