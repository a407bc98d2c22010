#pragma once

#include <utility>

#include "sexalloc/rng.hpp"

namespace sexalloc {

// P(m | N, M, n): which males survive when N - n of the N eggs die,
// deaths falling on eggs uniformly (label permutation). Returns 0 for
// survivor splits that are combinatorially impossible; throws on count
// bound violations (m > n, M > N, n > N, negatives).
double survivor_pmf(long eggs, long male_eggs, long n, long m);
double log_survivor_pmf(long eggs, long male_eggs, long n, long m);

// Each egg survives independently with probability 1 - death_rate; male
// survivors are drawn first, then females, so a fixed seed fixes (n, m).
std::pair<long, long> sample_mortality(long eggs, long male_eggs,
                                       double death_rate, Rng& rng);

// Smallest bound B with upper Poisson tail P(X > B) < epsilon.
long poisson_truncation_bound(double mean, double epsilon);

}  // namespace sexalloc
