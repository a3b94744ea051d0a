#pragma once

// Portable, reproducible randomness.
//
// Engine: std::mt19937_64. Conversions to doubles and discrete draws are
// done here rather than with <random> distributions. Substreams:
//   seed' = splitmix64(splitmix64(master ^ fnv1a(kind)) + id)

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace jsprr {

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a(std::string_view text);

/// Seed of substream (kind, id) under a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::string_view kind, std::uint64_t id);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t master, std::string_view kind, std::uint64_t id) : engine_(derive_seed(master, kind, id)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// True with probability p (p <= 0 never, p >= 1 always).
  bool bernoulli(double p) { return uniform() < p; }

  /// Index i with probability weights[i] / sum(weights); weights nonnegative, sum > 0.
  std::size_t discrete(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

}  // namespace jsprr
