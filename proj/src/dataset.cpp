#include "sexalloc/dataset.hpp"

#include <string>

#include "sexalloc/errors.hpp"

namespace sexalloc {

bool counts_feasible(long eggs, long male_eggs, long n, long m) {
  return eggs >= 0 && male_eggs >= 0 && n >= 0 && m >= 0 &&
         male_eggs <= eggs && m <= n && eggs >= n && male_eggs >= m &&
         eggs - n >= male_eggs - m;
}

bool Dataset::has_primary() const {
  for (const auto& r : clutches)
    if (!r.eggs || !r.male_eggs) return false;
  return !clutches.empty();
}

bool Dataset::has_deaths() const {
  for (const auto& r : clutches)
    if (!r.deaths) return false;
  return !clutches.empty();
}

long Dataset::count_of(const ClutchRecord& r) const {
  return mode == DataMode::Primary ? r.eggs.value() : r.n;
}

long Dataset::males_of(const ClutchRecord& r) const {
  return mode == DataMode::Primary ? r.male_eggs.value() : r.m;
}

long Dataset::total_offspring() const {
  long sum = 0;
  for (const auto& r : clutches) sum += count_of(r);
  return sum;
}

long Dataset::total_males() const {
  long sum = 0;
  for (const auto& r : clutches) sum += males_of(r);
  return sum;
}

void Dataset::validate() const {
  long row = 0;
  for (const auto& r : clutches) {
    ++row;
    const std::string at = " at record " + std::to_string(row);
    if (r.n < 0 || r.m < 0) throw InputError("negative count" + at);
    if (r.m > r.n) throw InputError("m > n" + at);
    if (mode == DataMode::Primary && (!r.eggs || !r.male_eggs))
      throw InputError("primary data requires N and M" + at);
    if (r.eggs) {
      if (*r.eggs < r.n) throw InputError("N < n" + at);
      if (r.deaths && *r.deaths != *r.eggs - r.n)
        throw InputError("deaths column inconsistent with N - n" + at);
    }
    if (r.deaths && *r.deaths < 0) throw InputError("negative deaths" + at);
    if (r.eggs && r.male_eggs &&
        !counts_feasible(*r.eggs, *r.male_eggs, r.n, r.m))
      throw InputError("counts violate survival feasibility" + at);
  }
}

Dataset make_secondary(const std::vector<std::pair<long, long>>& nm) {
  Dataset d;
  d.mode = DataMode::Secondary;
  d.clutches.reserve(nm.size());
  for (auto [n, m] : nm) d.clutches.push_back({n, m, {}, {}, {}});
  d.validate();
  return d;
}

Dataset make_primary(const std::vector<std::pair<long, long>>& NM) {
  Dataset d;
  d.mode = DataMode::Primary;
  d.clutches.reserve(NM.size());
  for (auto [N, M] : NM) d.clutches.push_back({N, M, N, M, 0});
  d.validate();
  return d;
}

Dataset filter_zero_mortality(const Dataset& data) {
  if (!data.has_deaths())
    throw InputError("filter_zero_mortality: deaths column required");
  Dataset out;
  out.mode = DataMode::Primary;
  for (const auto& r : data.clutches) {
    if (*r.deaths != 0) continue;
    ClutchRecord kept = r;
    kept.eggs = r.n;
    kept.male_eggs = r.m;
    out.clutches.push_back(kept);
  }
  out.validate();
  return out;
}

}  // namespace sexalloc
