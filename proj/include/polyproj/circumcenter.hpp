#pragma once

#include <vector>

#include "polyproj/linalg.hpp"

namespace polyproj {

/// Base point x0 and the remaining points x1..xm of a circumcenter query.
struct PointSet {
  Vector base;
  std::vector<Vector> others;
};

/// Point of aff{x0, ..., xm} equidistant from all of them:
/// c = x0 + sum_j alpha_j (x_j - x0) with
/// sum_j alpha_j <x_j - x0, x_i - x0> = |x_i - x0|^2 / 2.
///
/// Points within 1e-14 * (1 + |x0|) of x0 are dropped first. The system is
/// solved through an orthogonal factorization of the difference matrix rather
/// than the Gram matrix itself. Affinely dependent inputs get the minimum-norm
/// solution, which is not guaranteed to be equidistant when no circumcenter
/// exists.
Vector circumcenter(const PointSet& points);

}  // namespace polyproj
