#pragma once

#include <cstdint>

namespace polyproj {

/// SplitMix64 used in counter mode. Draw i of stream s is
/// mix64(key(seed, s) + (i + 1) * 0x9e3779b97f4a7c15), so every stream is an
/// independent, order-free sequence and the output is identical on every
/// platform. Floating-point conversions avoid <random> distributions, whose
/// algorithms differ between standard libraries.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  double uniform(double lo, double hi);
  /// Standard normal by Box-Muller (one deviate per two draws).
  double normal();

  static std::uint64_t mix64(std::uint64_t z);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace polyproj
