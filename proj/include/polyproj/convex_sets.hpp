#pragma once

#include <optional>
#include <variant>

#include "polyproj/linalg.hpp"

namespace polyproj {

/// {y : (y - center)^T Q (y - center) <= radius^2}.
class Ellipsoid {
 public:
  Ellipsoid(Vector center, SpdMatrix shape, double radius);

  const Vector& center() const { return center_; }
  const SpdMatrix& shape() const { return shape_; }
  double radius() const { return radius_; }
  Eigen::Index dim() const { return center_.size(); }

  /// Eigenpairs of the shape matrix, ascending. Used by the exact projection.
  const Vector& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }

 private:
  Vector center_;
  SpdMatrix shape_;
  double radius_;
  Vector eigenvalues_;
  Matrix eigenvectors_;
};

/// {z : <normal, z> <= offset}.
class HalfSpace {
 public:
  HalfSpace(Vector normal, double offset);

  const Vector& normal() const { return normal_; }
  double offset() const { return offset_; }
  Eigen::Index dim() const { return normal_.size(); }

  /// <normal, z> - offset; positive outside.
  double residual(const Vector& z) const { return normal_.dot(z) - offset_; }

 private:
  Vector normal_;
  double offset_;
};

struct GaugeValue {
  double value;
  Vector gradient;
};

/// g(y) = (y - c)^T Q (y - c) - eta^2 and its gradient 2 Q (y - c).
GaugeValue gauge(const Ellipsoid& e, const Vector& y);

/// Euclidean projection onto the ellipsoid. Points with gauge <= 0 are
/// returned unchanged. Otherwise the KKT multiplier mu of
/// p(mu) = (I + mu Q)^{-1} (x + mu Q c) is found by safeguarded Newton so that
/// |g(p)| <= tol * eta^2. Throws NonConvergence after 200 root-finding steps.
Vector exact_project(const Ellipsoid& e, const Vector& x, double tol);

/// Single linearized cut x - g(x) / |g'(x)|^2 * g'(x) onto {g <= 0}; x itself
/// when g(x) <= 0.
Vector fukushima_project(const Ellipsoid& e, const Vector& x);

/// 2 P(x) - x.
Vector reflect(const Ellipsoid& e, const Vector& x, double tol);

Vector project_halfspace(const HalfSpace& h, const Vector& x);

/// The cut {z : <x - p, z - p> <= 0}. Returns nullopt (the whole space) when
/// |x - p| <= 1e-14 * (1 + |x|).
std::optional<HalfSpace> supporting_halfspace(const Vector& x, const Vector& p);

/// A constraint set of the feasibility problem.
using ConvexSet = std::variant<Ellipsoid, HalfSpace>;

Eigen::Index dim(const ConvexSet& set);
bool contains(const ConvexSet& set, const Vector& x);
Vector project(const ConvexSet& set, const Vector& x, double tol);
/// Fukushima projection for ellipsoids; half-spaces project exactly.
Vector approx_project(const ConvexSet& set, const Vector& x);
Vector reflect(const ConvexSet& set, const Vector& x, double tol);

/// Per-set term of the epsilon-approximate solution test. For an ellipsoid:
/// (y - c)^T Q (y - c) - (eta + eps)^2. For a half-space the analogous
/// distance slack: <a, y> - b - eps * |a|.
double eps_violation(const ConvexSet& set, const Vector& y, double eps);

}  // namespace polyproj
