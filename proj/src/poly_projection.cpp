#include "polyproj/poly_projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polyproj {

namespace {

constexpr int kMaxActiveSetChanges = 10000;
constexpr double kDependentNormal = 1e-12;

Matrix gather_columns(const Matrix& normals, const std::vector<std::size_t>& idx) {
  Matrix out(normals.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) = normals.col(static_cast<Eigen::Index>(idx[j]));
  }
  return out;
}

}  // namespace

PolyProjection project(const Polyhedron& poly, const Vector& x, double tol) {
  if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "polyhedral projection tolerance must be positive");
  const auto m = poly.size();
  if (m == 0) return {x, {}, Vector(0)};

  const Eigen::Index n = x.size();
  Matrix normals(n, static_cast<Eigen::Index>(m));
  Vector offsets(static_cast<Eigen::Index>(m));
  Vector scale(static_cast<Eigen::Index>(m));
  Vector feas_tol(static_cast<Eigen::Index>(m));
  const double x_scale = 1.0 + x.norm();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& cut = poly.cuts[i];
    if (cut.dim() != n) throw Error(Errc::DimensionMismatch, "cut dimension differs from point");
    const auto k = static_cast<Eigen::Index>(i);
    scale[k] = cut.normal().norm();
    normals.col(k) = cut.normal() / scale[k];
    offsets[k] = cut.offset() / scale[k];
    feas_tol[k] = tol * x_scale * std::min(1.0, 1.0 / scale[k]);
  }
  auto violation = [&](const Vector& y, Eigen::Index i) { return normals.col(i).dot(y) - offsets[i]; };

  Vector y = x;
  std::vector<std::size_t> active;
  std::vector<double> u;
  int changes = 0;

  for (;;) {
    Eigen::Index p = -1;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(m); ++i) {
      if (std::find(active.begin(), active.end(), static_cast<std::size_t>(i)) != active.end()) continue;
      const double v = violation(y, i);
      if (v > feas_tol[i] && v > worst) {
        worst = v;
        p = i;
      }
    }
    if (p < 0) break;

    const Vector np = normals.col(p);
    double up = 0.0;
    for (;;) {
      if (++changes > kMaxActiveSetChanges) {
        throw Error(Errc::NonConvergence, "polyhedral projection exceeded 10000 active-set changes");
      }
      Vector r(static_cast<Eigen::Index>(active.size()));
      Vector z = np;
      if (!active.empty()) {
        const Matrix basis = gather_columns(normals, active);
        r = solve_symmetric(basis.transpose() * basis, basis.transpose() * np);
        z -= basis * r;
      }
      const bool dependent = z.norm() <= kDependentNormal;

      double t_partial = std::numeric_limits<double>::infinity();
      std::size_t blocking = 0;
      for (std::size_t j = 0; j < active.size(); ++j) {
        const double rj = r[static_cast<Eigen::Index>(j)];
        if (rj > 0.0 && u[j] / rj < t_partial) {
          t_partial = u[j] / rj;
          blocking = j;
        }
      }
      const double t_full = dependent ? std::numeric_limits<double>::infinity()
                                      : violation(y, p) / z.squaredNorm();
      if (std::isinf(t_partial) && std::isinf(t_full)) {
        throw Error(Errc::EmptyPolyhedronSuspected, "violated cut is inconsistent with the active set");
      }

      const double t = std::min(t_partial, t_full);
      if (!dependent) y -= t * z;
      for (std::size_t j = 0; j < active.size(); ++j) u[j] -= t * r[static_cast<Eigen::Index>(j)];
      up += t;
      if (t_full <= t_partial) {
        active.push_back(static_cast<std::size_t>(p));
        u.push_back(up);
        break;
      }
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(blocking));
      u.erase(u.begin() + static_cast<std::ptrdiff_t>(blocking));
    }
  }

  // Refinement: solve the equality-constrained projection on the final active
  // set directly, which removes drift from the incremental updates.
  if (!active.empty()) {
    const Matrix basis = gather_columns(normals, active);
    Vector rhs(static_cast<Eigen::Index>(active.size()));
    for (std::size_t j = 0; j < active.size(); ++j) {
      const auto k = static_cast<Eigen::Index>(active[j]);
      rhs[static_cast<Eigen::Index>(j)] = normals.col(k).dot(x) - offsets[k];
    }
    const Vector refined_u = solve_symmetric(basis.transpose() * basis, rhs);
    if ((refined_u.array() >= 0.0).all()) {
      const Vector refined = x - basis * refined_u;
      bool feasible = true;
      for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(m) && feasible; ++i) {
        feasible = violation(refined, i) <= feas_tol[i];
      }
      if (feasible) {
        y = refined;
        for (std::size_t j = 0; j < active.size(); ++j) u[j] = refined_u[static_cast<Eigen::Index>(j)];
      }
    }
  }

  PolyProjection out{y, {}, Vector::Zero(static_cast<Eigen::Index>(m))};
  for (std::size_t j = 0; j < active.size(); ++j) {
    const auto k = static_cast<Eigen::Index>(active[j]);
    out.multipliers[k] = u[j] / scale[k];
  }
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(m); ++i) {
    if (out.multipliers[i] > 0.0 || std::abs(violation(y, i)) <= feas_tol[i]) {
      out.active.push_back(static_cast<std::size_t>(i));
    }
  }
  return out;
}

Vector approx_project(const Polyhedron& poly, const Vector& x) {
  if (poly.empty()) return x;
  std::size_t best = 0;
  double h = poly.cuts[0].residual(x);
  for (std::size_t i = 1; i < poly.size(); ++i) {
    const double v = poly.cuts[i].residual(x);
    if (v > h) {
      h = v;
      best = i;
    }
  }
  if (h <= 0.0) return x;
  const Vector& a = poly.cuts[best].normal();
  return x - (h / a.squaredNorm()) * a;
}

}  // namespace polyproj
