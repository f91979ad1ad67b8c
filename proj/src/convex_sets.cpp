#include "polyproj/convex_sets.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace polyproj {

namespace {

void check_dim(Eigen::Index expected, const Vector& v, const char* what) {
  if (v.size() != expected) {
    throw Error(Errc::DimensionMismatch, std::string(what) + ": expected dimension " +
                                             std::to_string(expected) + ", got " +
                                             std::to_string(v.size()));
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Ellipsoid::Ellipsoid(Vector center, SpdMatrix shape, double radius)
    : center_(std::move(center)), shape_(std::move(shape)), radius_(radius) {
  require_finite(center_, "ellipsoid center");
  if (shape_.dim() != center_.size()) {
    throw Error(Errc::DimensionMismatch, "ellipsoid center and shape disagree in dimension");
  }
  if (!(radius_ > 0.0) || !std::isfinite(radius_)) {
    throw Error(Errc::ValidationError, "ellipsoid radius must be positive and finite");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(shape_.matrix());
  eigenvalues_ = eig.eigenvalues();
  eigenvectors_ = eig.eigenvectors();
}

HalfSpace::HalfSpace(Vector normal, double offset) : normal_(std::move(normal)), offset_(offset) {
  require_finite(normal_, "half-space normal");
  if (!(normal_.norm() > 0.0) || !std::isfinite(offset_)) {
    throw Error(Errc::ValidationError, "half-space needs a nonzero normal and a finite offset");
  }
}

GaugeValue gauge(const Ellipsoid& e, const Vector& y) {
  check_dim(e.dim(), y, "gauge");
  const Vector d = y - e.center();
  Vector qd = e.shape().matrix() * d;
  const double value = d.dot(qd) - e.radius() * e.radius();
  return {value, 2.0 * qd};
}

Vector exact_project(const Ellipsoid& e, const Vector& x, double tol) {
  if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "exact_project tolerance must be positive");
  if (gauge(e, x).value <= 0.0) return x;

  const Vector& lambda = e.eigenvalues();
  const Matrix& basis = e.eigenvectors();
  const Vector d = basis.transpose() * (x - e.center());
  const double eta2 = e.radius() * e.radius();

  // s(mu) = sum lambda_j d_j^2 / (1 + mu lambda_j)^2 is the squared Q-norm of
  // p(mu) - c. Newton runs on psi(mu) = 1/sqrt(s(mu)) - 1/eta, which is
  // concave and increasing, so iterates from the left never overshoot.
  auto s_and_slope = [&](double mu) {
    double s = 0.0;
    double ds = 0.0;
    for (Eigen::Index j = 0; j < d.size(); ++j) {
      const double t = 1.0 / (1.0 + mu * lambda[j]);
      const double w = lambda[j] * d[j] * d[j] * t * t;
      s += w;
      ds -= 2.0 * w * lambda[j] * t;
    }
    return std::pair{s, ds};
  };

  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; s_and_slope(hi).first >= eta2; ++i) {
    if (i > 2000) throw Error(Errc::NonConvergence, "no upper bracket for the ellipsoid multiplier");
    lo = hi;
    hi *= 2.0;
  }

  constexpr int kMaxSteps = 200;
  double mu = lo;
  bool converged = false;
  for (int step = 0; step < kMaxSteps; ++step) {
    const auto [s, ds] = s_and_slope(mu);
    if (std::abs(s - eta2) <= tol * eta2) {
      converged = true;
      break;
    }
    if (s > eta2) {
      lo = std::max(lo, mu);
    } else {
      hi = std::min(hi, mu);
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      converged = true;
      break;
    }
    const double psi = 1.0 / std::sqrt(s) - 1.0 / e.radius();
    const double dpsi = -0.5 * ds / (s * std::sqrt(s));
    double next = dpsi > 0.0 ? mu - psi / dpsi : lo;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    mu = next;
  }
  if (!converged) {
    throw Error(Errc::NonConvergence, "ellipsoid projection exceeded 200 root-finding steps");
  }

  Vector scaled(d.size());
  for (Eigen::Index j = 0; j < d.size(); ++j) scaled[j] = d[j] / (1.0 + mu * lambda[j]);
  return e.center() + basis * scaled;
}

Vector fukushima_project(const Ellipsoid& e, const Vector& x) {
  const GaugeValue g = gauge(e, x);
  if (g.value <= 0.0) return x;
  return x - (g.value / g.gradient.squaredNorm()) * g.gradient;
}

Vector reflect(const Ellipsoid& e, const Vector& x, double tol) {
  return 2.0 * exact_project(e, x, tol) - x;
}

Vector project_halfspace(const HalfSpace& h, const Vector& x) {
  check_dim(h.dim(), x, "project_halfspace");
  const double r = h.residual(x);
  if (r <= 0.0) return x;
  return x - (r / h.normal().squaredNorm()) * h.normal();
}

std::optional<HalfSpace> supporting_halfspace(const Vector& x, const Vector& p) {
  if (x.size() != p.size()) {
    throw Error(Errc::DimensionMismatch, "supporting_halfspace: point dimensions differ");
  }
  Vector a = x - p;
  if (a.norm() <= 1e-14 * (1.0 + x.norm())) return std::nullopt;
  const double b = a.dot(p);
  return HalfSpace(std::move(a), b);
}

Eigen::Index dim(const ConvexSet& set) {
  return std::visit([](const auto& s) { return s.dim(); }, set);
}

bool contains(const ConvexSet& set, const Vector& x) {
  return std::visit(Overloaded{[&](const Ellipsoid& e) { return gauge(e, x).value <= 0.0; },
                               [&](const HalfSpace& h) { return h.residual(x) <= 0.0; }},
                    set);
}

Vector project(const ConvexSet& set, const Vector& x, double tol) {
  return std::visit(Overloaded{[&](const Ellipsoid& e) { return exact_project(e, x, tol); },
                               [&](const HalfSpace& h) { return project_halfspace(h, x); }},
                    set);
}

Vector approx_project(const ConvexSet& set, const Vector& x) {
  return std::visit(Overloaded{[&](const Ellipsoid& e) { return fukushima_project(e, x); },
                               [&](const HalfSpace& h) { return project_halfspace(h, x); }},
                    set);
}

Vector reflect(const ConvexSet& set, const Vector& x, double tol) {
  return 2.0 * project(set, x, tol) - x;
}

double eps_violation(const ConvexSet& set, const Vector& y, double eps) {
  return std::visit(Overloaded{[&](const Ellipsoid& e) {
                                 check_dim(e.dim(), y, "eps_violation");
                                 const Vector d = y - e.center();
                                 const double r = e.radius() + eps;
                                 return d.dot(e.shape().matrix() * d) - r * r;
                               },
                               [&](const HalfSpace& h) {
                                 return h.residual(y) - eps * h.normal().norm();
                               }},
                    set);
}

}  // namespace polyproj
