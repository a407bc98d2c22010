#include "sexalloc/classical.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sexalloc/errors.hpp"
#include "sexalloc/math_util.hpp"

namespace sexalloc {

namespace {

// Falling factorial x(x-1)...(x-r+1).
double falling(double x, int r) {
  double out = 1.0;
  for (int i = 0; i < r; ++i) out *= x - static_cast<double>(i);
  return out;
}

Direction direction_of(double u) {
  return u < 0.0 ? Direction::UnderDispersed : Direction::OverDispersed;
}

}  // namespace

const char* direction_name(Direction d) {
  switch (d) {
    case Direction::UnderDispersed: return "under_dispersed";
    case Direction::OverDispersed: return "over_dispersed";
    case Direction::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

GroupedData group_by_clutch_size(const Dataset& data) {
  if (data.clutches.empty())
    throw InputError("group_by_clutch_size: empty dataset");
  std::map<long, SizeGroup> by_size;
  GroupedData out;
  for (const auto& r : data.clutches) {
    const long k = data.count_of(r);
    const long m = data.males_of(r);
    if (k == 0) {
      ++out.dropped_empty;
      continue;
    }
    SizeGroup& g = by_size[k];
    g.k = k;
    g.male_counts.push_back(m);
  }
  for (auto& [k, g] : by_size) {
    g.v = static_cast<long>(g.male_counts.size());
    g.total_males = 0;
    for (long m : g.male_counts) g.total_males += m;
    const double mean =
        static_cast<double>(g.total_males) / static_cast<double>(g.v);
    double ss = 0.0;
    for (long m : g.male_counts) {
      const double dev = static_cast<double>(m) - mean;
      ss += dev * dev;
    }
    g.sample_variance = g.v > 1 ? ss / static_cast<double>(g.v - 1) : 0.0;
    g.sex_ratio = static_cast<double>(g.total_males) /
                  (static_cast<double>(k) * static_cast<double>(g.v));
    out.groups.push_back(std::move(g));
  }
  return out;
}

ConditionalMoments meelis_group_moments(long v, long k, long total) {
  // Factorial moments of the multivariate hypergeometric: v groups of k
  // slots, total successes T among P = vk slots,
  //   E[(m_i)_r (m_j)_s] = (k)_r (k)_s (T)_{r+s} / (P)_{r+s}.
  const double V = static_cast<double>(v);
  const double K = static_cast<double>(k);
  const double T = static_cast<double>(total);
  const double P = V * K;
  const auto ratio = [&](int r) { return falling(T, r) / falling(P, r); };
  const double e_m2 = falling(K, 2) * ratio(2) + K * ratio(1);
  const double mean = V * e_m2;
  const double e_m4 = falling(K, 4) * ratio(4) + 6.0 * falling(K, 3) * ratio(3) +
                      7.0 * falling(K, 2) * ratio(2) + K * ratio(1);
  const double e_cross = falling(K, 2) * falling(K, 2) * ratio(4) +
                         2.0 * falling(K, 2) * K * ratio(3) + K * K * ratio(2);
  const double second = V * e_m4 + V * (V - 1.0) * e_cross;
  return {mean, second - mean * mean};
}

ClassicalTestReport meelis_test(const Dataset& data) {
  const GroupedData grouped = group_by_clutch_size(data);
  ClassicalTestReport report;
  report.test = "meelis";
  if (grouped.dropped_empty > 0)
    report.notes.push_back(std::to_string(grouped.dropped_empty) +
                           " empty brood(s) dropped");
  double sum_u = 0.0;
  long included = 0;
  for (const auto& g : grouped.groups) {
    GroupStatistic gs;
    gs.k = g.k;
    gs.v = g.v;
    gs.total_males = g.total_males;
    const ConditionalMoments mom = meelis_group_moments(g.v, g.k, g.total_males);
    // Var is an exact rational value; treat tiny residue from the
    // floating subtraction as degenerate.
    const double tol = 1e-9 * std::max(1.0, mom.mean * mom.mean);
    if (mom.variance <= tol) {
      gs.excluded = true;
      gs.statistic = 0.0;
    } else {
      double sum_sq = 0.0;
      for (long m : g.male_counts)
        sum_sq += static_cast<double>(m) * static_cast<double>(m);
      gs.statistic = (sum_sq - mom.mean) / std::sqrt(mom.variance);
      sum_u += gs.statistic;
      ++included;
    }
    report.per_group.push_back(gs);
  }
  if (included == 0) {
    report.direction = Direction::Indeterminate;
    report.notes.push_back("all size groups degenerate");
    return report;
  }
  const double u = sum_u / std::sqrt(static_cast<double>(included));
  report.statistic = u;
  report.p_value = two_sided_normal_p(u);
  report.direction = direction_of(u);
  return report;
}

ClassicalTestReport james_test(const Dataset& data) {
  const GroupedData grouped = group_by_clutch_size(data);
  ClassicalTestReport report;
  report.test = "james";
  if (grouped.dropped_empty > 0)
    report.notes.push_back(std::to_string(grouped.dropped_empty) +
                           " empty brood(s) dropped");

  double n_tot = 0.0, males = 0.0;
  double t_obs = 0.0;
  double a2 = 0.0, b22 = 0.0;  // sum (n)_2 and sum (n)_2^2
  double sum_t2_coeff[4] = {0.0, 0.0, 0.0, 0.0};
  for (const auto& g : grouped.groups) {
    for (long m : g.male_counts) {
      const double n = static_cast<double>(g.k);
      const double mm = static_cast<double>(m);
      n_tot += n;
      males += mm;
      t_obs += mm * (n - mm);
      const double n2 = falling(n, 2);
      a2 += n2;
      b22 += n2 * n2;
      // t^2 = (m)_4 + (4 - 2(n-1)) (m)_3
      //       + ((n-1)^2 - 4(n-1) + 2) (m)_2 + (n-1)^2 (m)_1
      const double w = n - 1.0;
      sum_t2_coeff[0] += falling(n, 4);
      sum_t2_coeff[1] += (4.0 - 2.0 * w) * falling(n, 3);
      sum_t2_coeff[2] += (w * w - 4.0 * w + 2.0) * n2;
      sum_t2_coeff[3] += w * w * n;
    }
  }
  const double total = males;
  if (n_tot < 2.0 || total <= 0.0 || total >= n_tot) {
    report.direction = Direction::Indeterminate;
    report.notes.push_back("all-male or all-female data");
    return report;
  }
  // Moments of t_i = m_i (n_i - m_i) conditional on the pooled male total,
  // the null conditional law being multivariate hypergeometric over egg
  // slots. All reduce to joint factorial moments
  //   E[(m_i)_r (m_j)_s] = (n_i)_r (n_j)_s (T)_{r+s} / (n_tot)_{r+s}.
  const auto ratio = [&](int r) { return falling(total, r) / falling(n_tot, r); };
  const double t_exp = a2 * (ratio(1) - ratio(2));
  const double e_t2 = sum_t2_coeff[0] * ratio(4) + sum_t2_coeff[1] * ratio(3) +
                      sum_t2_coeff[2] * ratio(2) + sum_t2_coeff[3] * ratio(1);
  const double pair_kernel = ratio(2) - 2.0 * ratio(3) + ratio(4);
  const double e_cross = (a2 * a2 - b22) * pair_kernel;
  const double var = e_t2 + e_cross - t_exp * t_exp;
  if (!(var > 1e-12 * std::max(1.0, t_exp * t_exp))) {
    report.direction = Direction::Indeterminate;
    report.notes.push_back("degenerate pair-count distribution");
    return report;
  }
  const double u = (t_exp - t_obs) / std::sqrt(var);
  report.statistic = u;
  report.p_value = two_sided_normal_p(u);
  report.direction = direction_of(u);
  return report;
}

std::optional<double> dispersion_ratio(const Dataset& data) {
  const GroupedData grouped = group_by_clutch_size(data);
  double num = 0.0, den = 0.0;
  bool usable = false;
  for (const auto& g : grouped.groups) {
    if (g.v < 2) continue;
    usable = true;
    const double V = static_cast<double>(g.v);
    const double K = static_cast<double>(g.k);
    num += V * g.sample_variance;
    den += V * K * g.sex_ratio * (1.0 - g.sex_ratio);
  }
  if (!usable || den <= 0.0) return std::nullopt;
  return num / den;
}

std::optional<double> mccullagh_dispersion(const Dataset& data) {
  const GroupedData grouped = group_by_clutch_size(data);
  double n_tot = 0.0, males = 0.0;
  long count = 0;
  for (const auto& g : grouped.groups) {
    for (long m : g.male_counts) {
      n_tot += static_cast<double>(g.k);
      males += static_cast<double>(m);
      ++count;
    }
  }
  if (count < 2) throw InputError("mccullagh_dispersion: need C >= 2");
  const double p = males / n_tot;
  if (p <= 0.0 || p >= 1.0) return std::nullopt;
  double sum = 0.0;
  for (const auto& g : grouped.groups) {
    const double n = static_cast<double>(g.k);
    for (long m : g.male_counts) {
      const double dev = static_cast<double>(m) - p * n;
      sum += dev * dev / (n * p * (1.0 - p));
    }
  }
  return sum / static_cast<double>(count - 1);
}

}  // namespace sexalloc
