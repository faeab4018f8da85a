#pragma once

#include <cstdint>
#include <random>

namespace teleo {

/// SplitMix64 finaliser (Steele, Lea & Flood). Used only to mix seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of the independent stream `stream` under a master seed:
///   derive_seed(seed, i) = splitmix64(seed + (i + 1) * 0x9E3779B97F4A7C15)
/// Stream 0 is the one used by unsharded sampling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Per-stream generator: mt19937_64 seeded with derive_seed(seed, stream).
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Bernoulli as uniform() < p, returned as 0.0 / 1.0.
  double bernoulli(double p);
  /// Normal with the given mean and variance (polar method via the standard library).
  double normal(double mean, double variance);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

}  // namespace teleo
