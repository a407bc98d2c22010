#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sexalloc/dataset.hpp"

namespace sexalloc {

enum class Direction { UnderDispersed, OverDispersed, Indeterminate };

const char* direction_name(Direction d);

// Clutches sharing the same size k, with the group-level summaries used
// by the dispersion statistics.
struct SizeGroup {
  long k = 0;                 // clutch size
  long v = 0;                 // number of clutches of this size
  std::vector<long> male_counts;
  long total_males = 0;
  double sample_variance = 0.0;  // divisor v - 1; 0 when v == 1
  double sex_ratio = 0.0;        // total_males / (k * v)
};

struct GroupStatistic {
  long k = 0;
  long v = 0;
  long total_males = 0;
  double statistic = 0.0;
  bool excluded = false;  // degenerate group: conditional variance is 0
};

struct ClassicalTestReport {
  std::string test;
  std::optional<double> statistic;
  std::optional<double> p_value;  // two-sided, 2(1 - Phi(|U|))
  Direction direction = Direction::Indeterminate;
  std::vector<GroupStatistic> per_group;
  std::vector<std::string> notes;
};

// Groups by observed size; records with n = 0 are dropped (they carry no
// sex information) and reported via the dropped count.
struct GroupedData {
  std::vector<SizeGroup> groups;
  long dropped_empty = 0;
};

GroupedData group_by_clutch_size(const Dataset& data);

// Conditional dispersion test: compares sum(m_i^2) in each size group
// with its exact null moments given the group total, the null being the
// multivariate hypergeometric assignment of males to egg slots. Negative
// values indicate under-dispersion. Per-group statistics are combined as
// sum(U_k) / sqrt(#groups) over non-degenerate groups.
ClassicalTestReport meelis_test(const Dataset& data);

// Pair-count dispersion test for mixed clutch sizes, built on
// t_i = m_i (n_i - m_i) and standardized by the exact moments of the
// male assignment conditional on the pooled total. Negative values
// indicate under-dispersion.
ClassicalTestReport james_test(const Dataset& data);

// Observed-to-binomial variance ratio, a ratio of sums over size groups;
// groups with a single clutch are excluded. Undefined (nullopt) when every
// usable group is single-sex.
std::optional<double> dispersion_ratio(const Dataset& data);

// McCullagh's dispersion estimator, a sum of per-clutch ratios with the
// pooled sex ratio plugged in. Undefined when the pooled ratio is 0 or 1.
std::optional<double> mccullagh_dispersion(const Dataset& data);

// Exact null moments of sum(m_i^2) for v clutches of size k given total T.
struct ConditionalMoments {
  double mean = 0.0;
  double variance = 0.0;
};
ConditionalMoments meelis_group_moments(long v, long k, long total);

}  // namespace sexalloc
