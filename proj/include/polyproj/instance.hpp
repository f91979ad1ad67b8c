#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "polyproj/convex_sets.hpp"

namespace polyproj {

/// Sampling ranges of the ellipsoid generator. Set i draws from stream i + 1
/// of the counter RNG, the starting point from stream 0:
///   A_i    n x factor_cols, entries uniform[-a_range, a_range]
///   Q_i    A_i A_i^T + lambda_i I, lambda_i uniform[lambda_lo, lambda_hi]
///   y_i    uniform[-center_range, center_range]^n
///   eta_i  margin * (1 + |y_i|) * sqrt(|Q_i|_2), so the unit ball lies in U_i
///   x0     uniform on the sphere of radius
///          x0_radius_factor * max_i eta_i / sqrt(min_i lambda_min(Q_i))
struct GeneratorParams {
  std::size_t factor_cols = 0;  // 0 means n
  double a_range = 1.0;
  double lambda_lo = 0.1;
  double lambda_hi = 1.0;
  double center_range = 1.0;
  double margin = 1.0;
  double x0_radius_factor = 2.0;
  /// Resampling attempts for a starting point outside every set.
  int x0_attempts = 100;
};

struct Instance {
  std::size_t m = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  GeneratorParams params;
  std::vector<Ellipsoid> ellipsoids;
  Vector x0;
  /// True when no sampled starting point was outside every set and x0 was
  /// placed radially outside the first ellipsoid instead.
  bool x0_fallback = false;

  std::vector<ConvexSet> sets() const;
};

inline constexpr int kInstanceFormatVersion = 1;

Instance generate(std::size_t m, std::size_t n, std::uint64_t seed, const GeneratorParams& params = {});

/// Versioned text encoding; numbers use the shortest round-trip decimal form,
/// so parse(serialize(I)) reproduces every value bitwise.
std::string serialize(const Instance& instance);
/// Throws SchemaVersionMismatch for another format version and ValidationError
/// for malformed content (bad dimensions, nonpositive radius, non-symmetric
/// shape); an indefinite shape matrix raises NotPositiveDefinite.
Instance parse(std::string_view text);

/// Throws IoError when the file cannot be written or read.
void save(const Instance& instance, const std::filesystem::path& path);
Instance load(const std::filesystem::path& path);

}  // namespace polyproj
