#include "polyproj/methods.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "polyproj/circumcenter.hpp"
#include "polyproj/parallel.hpp"
#include "polyproj/poly_projection.hpp"

namespace polyproj {

namespace {

struct MethodName {
  Method method;
  std::string_view cli;
  std::string_view enumerator;
};

constexpr MethodName kMethodNames[] = {
    {Method::TPM, "3pm", "TPM"},
    {Method::TPM_PAR, "3pm-par", "TPM_PAR"},
    {Method::A3PM, "a3pm", "A3PM"},
    {Method::A3PM_PAR, "a3pm-par", "A3PM_PAR"},
    {Method::CYCLIC, "cyclic", "CYCLIC"},
    {Method::CIMMINO, "cimmino", "CIMMINO"},
    {Method::CIMMINO_PAR, "cimmino-par", "CIMMINO_PAR"},
    {Method::SCCRM, "sccrm", "SCCRM"},
    {Method::CRM_PROD, "crm", "CRM_PROD"},
};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

void check_sets(std::span<const ConvexSet> sets, const Vector& x) {
  if (sets.empty()) throw Error(Errc::InvalidArgument, "at least one constraint set is required");
  for (const auto& s : sets) {
    if (dim(s) != x.size()) throw Error(Errc::DimensionMismatch, "constraint set and point differ in dimension");
  }
}

/// Builds the polyhedron from x and per-set (approximate) projections. Trivial
/// cuts are omitted; the remaining cuts keep set order.
Polyhedron supporting_polyhedron(const Vector& x, const std::vector<Vector>& points) {
  Polyhedron poly;
  for (const auto& p : points) {
    if (auto cut = supporting_halfspace(x, p)) poly.cuts.push_back(std::move(*cut));
  }
  return poly;
}

std::vector<Vector> project_all(std::span<const ConvexSet> sets, const Vector& x, double tol, unsigned threads) {
  std::vector<Vector> out(sets.size());
  parallel_for(sets.size(), threads, [&](std::size_t i) { out[i] = project(sets[i], x, tol); });
  return out;
}

std::vector<Vector> approx_project_all(std::span<const ConvexSet> sets, const Vector& x, unsigned threads) {
  std::vector<Vector> out(sets.size());
  parallel_for(sets.size(), threads, [&](std::size_t i) { out[i] = approx_project(sets[i], x); });
  return out;
}

}  // namespace

std::string_view to_string(Method method) {
  for (const auto& entry : kMethodNames) {
    if (entry.method == method) return entry.cli;
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (const auto& entry : kMethodNames) {
    if (iequals(name, entry.cli) || iequals(name, entry.enumerator)) return entry.method;
  }
  return std::nullopt;
}

bool is_parallel(Method method) {
  return method == Method::TPM_PAR || method == Method::A3PM_PAR || method == Method::CIMMINO_PAR;
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::EPS_SOLUTION: return "EPS_SOLUTION";
    case Termination::ITER_CAP: return "ITER_CAP";
    case Termination::TIME_CAP: return "TIME_CAP";
  }
  return "UNKNOWN";
}

AccuracySchedule AccuracySchedule::constant(double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw Error(Errc::InvalidArgument, "accuracy must lie in [0, 1)");
  return AccuracySchedule(eps, 1.0, eps);
}

AccuracySchedule AccuracySchedule::geometric(double eps0, double ratio, double clip) {
  if (!(eps0 >= 0.0) || !(ratio >= 0.0) || !(clip >= 0.0 && clip < 1.0)) {
    throw Error(Errc::InvalidArgument, "geometric accuracy needs eps0 >= 0, ratio >= 0 and clip in [0, 1)");
  }
  return AccuracySchedule(eps0, ratio, clip);
}

double AccuracySchedule::at(std::size_t k) const {
  return std::min(eps0_ * std::pow(ratio_, static_cast<double>(k)), clip_);
}

double AccuracySchedule::sup() const {
  return ratio_ > 1.0 && eps0_ > 0.0 ? clip_ : std::min(eps0_, clip_);
}

void SolverConfig::validate() const {
  if (!(eps_stop >= 0.0)) throw Error(Errc::InvalidArgument, "eps_stop must be nonnegative");
  if (!(accuracy.sup() < 1.0)) throw Error(Errc::InvalidArgument, "accuracy schedule must satisfy sup < 1");
  if (!(max_wall_seconds > 0.0)) throw Error(Errc::InvalidArgument, "wall-time cap must be positive");
  if (!(projection_tol > 0.0)) throw Error(Errc::InvalidArgument, "projection tolerance must be positive");
}

bool is_eps_solution(std::span<const ConvexSet> sets, const Vector& y, double eps) {
  return std::all_of(sets.begin(), sets.end(), [&](const ConvexSet& s) { return eps_violation(s, y, eps) <= 0.0; });
}

double violation(std::span<const ConvexSet> sets, const Vector& y, double eps) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& s : sets) worst = std::max(worst, eps_violation(s, y, eps));
  return worst;
}

double max_set_distance(std::span<const ConvexSet> sets, const Vector& y, double tol) {
  double worst = 0.0;
  for (const auto& s : sets) worst = std::max(worst, (y - project(s, y, tol)).norm());
  return worst;
}

StepResult step_3pm(std::span<const ConvexSet> sets, const Vector& x, double tol, unsigned threads) {
  check_sets(sets, x);
  const Polyhedron poly = supporting_polyhedron(x, project_all(sets, x, tol, threads));
  if (poly.empty()) return {x, {true, 0, 0}};
  PolyProjection proj = project(poly, x, tol);
  return {std::move(proj.point), {false, poly.size(), proj.active.size()}};
}

StepResult step_a3pm(std::span<const ConvexSet> sets, const Vector& x, double eps_k, double tol, unsigned threads) {
  if (!(eps_k >= 0.0 && eps_k < 1.0)) throw Error(Errc::InvalidArgument, "accuracy must lie in [0, 1)");
  if (eps_k == 0.0) return step_3pm(sets, x, tol, threads);
  check_sets(sets, x);
  const Polyhedron poly = supporting_polyhedron(x, approx_project_all(sets, x, threads));
  if (poly.empty()) return {x, {true, 0, 0}};
  Vector next = approx_project(poly, x);
  return {std::move(next), {false, poly.size(), 1}};
}

Vector step_cyclic(std::span<const ConvexSet> sets, const Vector& x, double tol) {
  check_sets(sets, x);
  Vector y = x;
  for (const auto& s : sets) y = project(s, y, tol);
  return y;
}

Vector step_cimmino(std::span<const ConvexSet> sets, const Vector& x, double tol, unsigned threads) {
  check_sets(sets, x);
  const std::vector<Vector> points = project_all(sets, x, tol, threads);
  Vector sum = Vector::Zero(x.size());
  for (const auto& p : points) sum += p;
  return sum / static_cast<double>(points.size());
}

std::pair<Vector, SccrmState> step_sccrm(std::span<const ConvexSet> sets, SccrmState state, const Vector& x,
                                         double tol) {
  check_sets(sets, x);
  const ConvexSet& a = sets[state.right(sets.size())];
  const ConvexSet& b = sets[state.left(sets.size())];

  const Vector alternating = project(a, project(b, x, tol), tol);
  const Vector w = 0.5 * (project(a, alternating, tol) + project(b, alternating, tol));
  Vector next = circumcenter({w, {reflect(a, w, tol), reflect(b, w, tol)}});
  return {std::move(next), state.next()};
}

Vector tile(const Vector& x, std::size_t m) {
  return x.replicate(static_cast<Eigen::Index>(m), 1);
}

Vector block_mean(const Vector& z, std::size_t m) {
  const Eigen::Index n = z.size() / static_cast<Eigen::Index>(m);
  Vector sum = Vector::Zero(n);
  for (std::size_t i = 0; i < m; ++i) sum += z.segment(static_cast<Eigen::Index>(i) * n, n);
  return sum / static_cast<double>(m);
}

Vector step_crm_product(std::span<const ConvexSet> sets, const Vector& z, double tol) {
  const std::size_t m = sets.size();
  if (m == 0) throw Error(Errc::InvalidArgument, "at least one constraint set is required");
  const Eigen::Index n = dim(sets[0]);
  if (z.size() != n * static_cast<Eigen::Index>(m)) {
    throw Error(Errc::DimensionMismatch, "product-space point must have m * n entries");
  }

  Vector reflected_w(z.size());
  for (std::size_t i = 0; i < m; ++i) {
    const auto seg = static_cast<Eigen::Index>(i) * n;
    reflected_w.segment(seg, n) = reflect(sets[i], Vector(z.segment(seg, n)), tol);
  }
  const Vector reflected_d = 2.0 * tile(block_mean(reflected_w, m), m) - reflected_w;
  return circumcenter({z, {reflected_w, reflected_d}});
}

Trace run(std::span<const ConvexSet> sets, const Vector& x0, const SolverConfig& config) {
  config.validate();
  require_finite(x0, "starting point");
  check_sets(sets, x0);

  using Clock = std::chrono::steady_clock;
  const unsigned threads = is_parallel(config.method) ? (config.threads ? config.threads : default_threads()) : 1;
  const double tol = config.projection_tol;

  Trace trace;
  trace.iterates.push_back(x0);
  Vector x = x0;
  Vector product = config.method == Method::CRM_PROD ? tile(x0, sets.size()) : Vector();
  SccrmState sccrm;

  const auto start = Clock::now();
  for (std::size_t k = 0;; ++k) {
    if (is_eps_solution(sets, x, config.eps_stop)) {
      trace.termination = Termination::EPS_SOLUTION;
      break;
    }
    if (k >= config.max_iters) {
      trace.termination = Termination::ITER_CAP;
      break;
    }
    if (std::chrono::duration<double>(Clock::now() - start).count() >= config.max_wall_seconds) {
      trace.termination = Termination::TIME_CAP;
      break;
    }

    IterationRecord record;
    const auto step_start = Clock::now();
    switch (config.method) {
      case Method::TPM:
      case Method::TPM_PAR: {
        StepResult r = step_3pm(sets, x, tol, threads);
        x = std::move(r.point);
        record.active_cut_count = r.diag.active_cut_count;
        break;
      }
      case Method::A3PM:
      case Method::A3PM_PAR: {
        StepResult r = step_a3pm(sets, x, config.accuracy.at(k), tol, threads);
        x = std::move(r.point);
        record.active_cut_count = r.diag.active_cut_count;
        break;
      }
      case Method::CYCLIC:
        x = step_cyclic(sets, x, tol);
        break;
      case Method::CIMMINO:
      case Method::CIMMINO_PAR:
        x = step_cimmino(sets, x, tol, threads);
        break;
      case Method::SCCRM: {
        auto [next, state] = step_sccrm(sets, sccrm, x, tol);
        x = std::move(next);
        sccrm = state;
        break;
      }
      case Method::CRM_PROD:
        product = step_crm_product(sets, product, tol);
        x = block_mean(product, sets.size());
        break;
    }
    record.step_seconds = std::chrono::duration<double>(Clock::now() - step_start).count();
    record.violation = violation(sets, x, config.eps_stop);
    record.max_set_distance = max_set_distance(sets, x, tol);
    trace.per_iter.push_back(record);
    trace.iterates.push_back(x);
  }
  return trace;
}

}  // namespace polyproj
