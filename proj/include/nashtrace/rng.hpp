#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "nashtrace/game.hpp"
#include "nashtrace/strategy.hpp"

namespace nashtrace {

// splitmix64 finalizer (Steele, Lea, Flood 2014); used to derive independent
// substreams from a user seed so result order never depends on scheduling.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Deterministic random source. mt19937_64 output is pinned by the standard,
/// and all draws below are built from raw 64-bit words rather than the
/// implementation-defined standard distributions, so identical seeds give
/// identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng substream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(mix_seed(seed, stream));
  }

  /// Uniform on (0, 1].
  double uniform01() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double exponential() { return -std::log(uniform01()); }

  /// Uniform point on the simplex (normalized unit-exponential draws).
  MixedStrategy simplex_point(std::size_t size) {
    std::vector<double> w(size);
    for (double& x : w) x = exponential();
    return MixedStrategy::normalized(std::move(w));
  }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

inline StrategyProfile random_profile(const Game& game, Rng& rng) {
  std::vector<MixedStrategy> s;
  s.reserve(game.num_players());
  for (std::size_t g : game.shape()) s.push_back(rng.simplex_point(g));
  return StrategyProfile(std::move(s));
}

}  // namespace nashtrace
