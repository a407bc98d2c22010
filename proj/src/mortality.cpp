#include "sexalloc/mortality.hpp"

#include <cmath>
#include <stdexcept>

#include "sexalloc/math_util.hpp"

namespace sexalloc {

namespace {

void check_bounds(long eggs, long male_eggs, long n, long m) {
  if (eggs < 0 || male_eggs < 0 || n < 0 || m < 0)
    throw std::invalid_argument("survivor_pmf: negative count");
  if (male_eggs > eggs)
    throw std::invalid_argument("survivor_pmf: M > N");
  if (n > eggs) throw std::invalid_argument("survivor_pmf: n > N");
  if (m > n) throw std::invalid_argument("survivor_pmf: m > n");
}

}  // namespace

double log_survivor_pmf(long eggs, long male_eggs, long n, long m) {
  check_bounds(eggs, male_eggs, n, m);
  // Within bounds, an impossible split (more male survivors than male
  // eggs, or more female survivors than female eggs) has probability 0.
  if (m > male_eggs || n - m > eggs - male_eggs) return kNegInf;
  const long deaths = eggs - n;
  const long male_deaths = male_eggs - m;
  return lchoose(male_eggs, male_deaths) +
         lchoose(eggs - male_eggs, deaths - male_deaths) -
         lchoose(eggs, deaths);
}

double survivor_pmf(long eggs, long male_eggs, long n, long m) {
  return std::exp(log_survivor_pmf(eggs, male_eggs, n, m));
}

std::pair<long, long> sample_mortality(long eggs, long male_eggs,
                                       double death_rate, Rng& rng) {
  if (!(death_rate >= 0.0 && death_rate <= 1.0))
    throw std::invalid_argument("sample_mortality: d must be in [0,1]");
  if (male_eggs < 0 || male_eggs > eggs)
    throw std::invalid_argument("sample_mortality: need 0 <= M <= N");
  const double survive = 1.0 - death_rate;
  const long m = rng.binomial(male_eggs, survive);
  const long f = rng.binomial(eggs - male_eggs, survive);
  return {m + f, m};
}

long poisson_truncation_bound(double mean, double epsilon) {
  if (!(mean > 0.0))
    throw std::invalid_argument("poisson_truncation_bound: mean must be > 0");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument(
        "poisson_truncation_bound: epsilon must be in (0,1)");
  // P(X > B) = gamma_p(B+1, mean), decreasing in B. Scan from 0; the
  // bound is near mean + O(sqrt(mean) * log(1/epsilon)).
  long bound = 0;
  while (gamma_cdf(mean, static_cast<double>(bound) + 1.0, 1.0) >= epsilon)
    ++bound;
  return bound;
}

}  // namespace sexalloc
