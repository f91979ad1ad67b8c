#pragma once

#include <cstddef>
#include <vector>

#include "polyproj/convex_sets.hpp"

namespace polyproj {

/// Intersection of finitely many half-spaces. An empty cut list is the whole
/// space.
struct Polyhedron {
  std::vector<HalfSpace> cuts;

  bool empty() const { return cuts.empty(); }
  std::size_t size() const { return cuts.size(); }
};

struct PolyProjection {
  Vector point;
  /// Indices of cuts with a positive multiplier or whose boundary holds the
  /// point within tolerance, ascending.
  std::vector<std::size_t> active;
  /// One multiplier per cut, in the scaling of the given normals:
  /// point = x - sum_i multipliers[i] * cuts[i].normal().
  Vector multipliers;
};

/// Exact Euclidean projection of x onto the polyhedron.
///
/// Solved with a dual active-set method (Goldfarb-Idnani with identity
/// Hessian): starting from the unconstrained minimizer x, the most violated
/// cut is added and multipliers are kept nonnegative by dropping blocking
/// cuts. Each cut is normalized internally. On exit every cut satisfies
/// <a_i, y> - b_i <= tol * (1 + |x|) * min(1, |a_i|), followed by a final
/// equality-constrained solve on the active set.
///
/// Throws NonConvergence after 10 000 active-set changes and
/// EmptyPolyhedronSuspected if a violated cut cannot be satisfied.
PolyProjection project(const Polyhedron& poly, const Vector& x, double tol);

/// One Fukushima cut on h(z) = max_i (<a_i, z> - b_i): returns x if h(x) <= 0,
/// otherwise x - h(x) / |a_k|^2 * a_k for the lowest maximizing index k.
Vector approx_project(const Polyhedron& poly, const Vector& x);

}  // namespace polyproj
