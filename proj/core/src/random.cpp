#include "teleo/random.hpp"

#include <cmath>

namespace teleo {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(seed + (stream + 1) * 0x9E3779B97F4A7C15ULL);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : engine_(derive_seed(seed, stream)) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::bernoulli(double p) { return uniform() < p ? 1.0 : 0.0; }

double Rng::normal(double mean, double variance) {
  const double z = gauss_(engine_);
  return mean + std::sqrt(variance) * z;
}

}  // namespace teleo
