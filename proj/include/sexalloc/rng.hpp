#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>

namespace sexalloc {

// xoshiro256++ with splitmix64 seeding. The standard library engines and
// distributions are not bit-stable across implementations, so all sampling
// is done in-house on top of this generator. Streams for parallel work are
// derived by hashing (seed, stream ids); see Rng::stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) { reseed(seed); }

  void reseed(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& s : state_) s = splitmix64(x);
    has_spare_normal_ = false;
  }

  // Derives an independent stream from a master seed and up to three
  // indices (e.g. cell, replicate). The mapping is a fixed hash, so the
  // stream identity does not depend on execution order or thread count.
  static Rng stream(std::uint64_t master_seed,
                    std::uint64_t id0,
                    std::uint64_t id1 = 0,
                    std::uint64_t id2 = 0) {
    std::uint64_t x = master_seed;
    std::uint64_t h = splitmix64(x);
    x = h ^ (id0 + 0x9e3779b97f4a7c15ULL);
    h = splitmix64(x);
    x = h ^ (id1 + 0x9e3779b97f4a7c15ULL);
    h = splitmix64(x);
    x = h ^ (id2 + 0x9e3779b97f4a7c15ULL);
    return Rng(splitmix64(x));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0,1) with 53 random bits.
  double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1); safe as argument to log().
  double u01_open() {
    double u;
    do {
      u = u01();
    } while (u <= 0.0);
    return u;
  }

  // Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  bool bernoulli(double p) { return u01() < p; }

  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }

  // Marsaglia–Tsang; shape > 0, unit scale.
  double gamma(double shape);
  double gamma(double shape, double rate) { return gamma(shape) / rate; }

  double beta(double a, double b);

  // Exact inversion; large means are handled by halving splits.
  long poisson(double mean);

  long binomial(long n, double p);

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace sexalloc
