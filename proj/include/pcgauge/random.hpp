#pragma once

#include <cstdint>
#include <random>

namespace pcgauge {

/// Explicit random state. Distributions are computed here rather than with
/// the <random> distribution classes, whose output is implementation
/// defined; this keeps sampled values bit-identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for draw number `counter` under `seed`. Sample k of a
  /// Monte Carlo run always uses for_stream(seed, k), whatever the thread count.
  static Rng for_stream(std::uint64_t seed, std::uint64_t counter);

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Standard normal (Box-Muller, no cached second variate).
  double normal();

  /// Uniform integer in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace pcgauge
