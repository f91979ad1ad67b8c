#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "polyproj/convex_sets.hpp"

namespace polyproj {

enum class Method { TPM, TPM_PAR, A3PM, A3PM_PAR, CYCLIC, CIMMINO, CIMMINO_PAR, SCCRM, CRM_PROD };

inline constexpr Method kAllMethods[] = {Method::TPM,      Method::TPM_PAR, Method::A3PM,
                                         Method::A3PM_PAR, Method::CYCLIC,  Method::CIMMINO,
                                         Method::CIMMINO_PAR, Method::SCCRM, Method::CRM_PROD};

/// CLI name of a method: 3pm, 3pm-par, a3pm, a3pm-par, cyclic, cimmino,
/// cimmino-par, sccrm, crm.
std::string_view to_string(Method method);
/// Accepts the CLI names, case-insensitively, and the enumerator names
/// (TPM, CRM_PROD, ...).
std::optional<Method> parse_method(std::string_view name);
bool is_parallel(Method method);

/// Accuracy sequence eps_k in [0, 1) for the approximate method. Only
/// eps_k == 0 changes behavior (exact projections); any positive value
/// selects the Fukushima projector.
class AccuracySchedule {
 public:
  static AccuracySchedule constant(double eps);
  /// eps_k = min(eps0 * ratio^k, clip) with clip < 1.
  static AccuracySchedule geometric(double eps0, double ratio, double clip);

  double at(std::size_t k) const;
  double sup() const;

 private:
  AccuracySchedule(double eps0, double ratio, double clip) : eps0_(eps0), ratio_(ratio), clip_(clip) {}

  double eps0_;
  double ratio_;
  double clip_;
};

struct SolverConfig {
  Method method = Method::TPM;
  /// epsilon of the epsilon-approximate solution test.
  double eps_stop = 1e-8;
  AccuracySchedule accuracy = AccuracySchedule::constant(0.5);
  std::size_t max_iters = 100000;
  double max_wall_seconds = 600.0;
  /// Tolerance handed to the exact set and polyhedral projections.
  double projection_tol = 1e-12;
  /// Workers for the parallel variants; 0 means default_threads().
  unsigned threads = 0;

  /// Throws InvalidArgument on a negative eps_stop, sup eps_k >= 1, a
  /// non-positive wall cap or projection tolerance.
  void validate() const;
};

enum class Termination { EPS_SOLUTION, ITER_CAP, TIME_CAP };
std::string_view to_string(Termination t);

struct IterationRecord {
  double max_set_distance = 0.0;
  double violation = 0.0;
  double step_seconds = 0.0;
  std::size_t active_cut_count = 0;
};

/// iterates[0] is the starting point and iterates[k + 1] the result of step
/// k, so iterates.size() == per_iter.size() + 1.
struct Trace {
  std::vector<Vector> iterates;
  std::vector<IterationRecord> per_iter;
  Termination termination = Termination::ITER_CAP;

  std::size_t iterations() const { return per_iter.size(); }
  const Vector& final_point() const { return iterates.back(); }
};

struct StepDiag {
  /// Every supporting half-space was trivial: x already lies in all sets.
  bool all_feasible = false;
  std::size_t cut_count = 0;
  std::size_t active_cut_count = 0;
};

struct StepResult {
  Vector point;
  StepDiag diag;
};

/// Set pair of the successive centralized method at iteration k (0-based):
/// left = k mod m, right = (k + 1) mod m.
struct SccrmState {
  std::size_t k = 0;

  std::size_t left(std::size_t m) const { return k % m; }
  std::size_t right(std::size_t m) const { return (k + 1) % m; }
  SccrmState next() const { return {k + 1}; }
};

bool is_eps_solution(std::span<const ConvexSet> sets, const Vector& y, double eps);
/// max_i eps_violation(set_i, y, eps); <= 0 exactly when is_eps_solution.
double violation(std::span<const ConvexSet> sets, const Vector& y, double eps);
/// max_i |y - P_i(y)|.
double max_set_distance(std::span<const ConvexSet> sets, const Vector& y, double tol);

/// Polyhedral projection step: project x onto every set, build the
/// supporting half-spaces, project x onto their intersection.
StepResult step_3pm(std::span<const ConvexSet> sets, const Vector& x, double tol, unsigned threads = 1);

/// Approximate variant. eps_k == 0 is exactly step_3pm. Otherwise Fukushima
/// points replace the projections and the polyhedral phase is a single cut on
/// the most violated half-space.
StepResult step_a3pm(std::span<const ConvexSet> sets, const Vector& x, double eps_k, double tol,
                     unsigned threads = 1);

/// Sequential projections onto sets 0..m-1.
Vector step_cyclic(std::span<const ConvexSet> sets, const Vector& x, double tol);

/// Average of the m projections, summed in index order for every thread count.
Vector step_cimmino(std::span<const ConvexSet> sets, const Vector& x, double tol, unsigned threads = 1);

/// T_{A,B}(x) = circ(w, R_A w, R_B w) with w = (P_A + P_B)/2 (P_A P_B x),
/// A = sets[right], B = sets[left].
std::pair<Vector, SccrmState> step_sccrm(std::span<const ConvexSet> sets, SccrmState state, const Vector& x,
                                         double tol);

/// z = (x^(1), ..., x^(m)) stacked into one vector of size n*m.
Vector tile(const Vector& x, std::size_t m);
/// Mean of the m blocks of z, i.e. the diagonal component of P_D(z).
Vector block_mean(const Vector& z, std::size_t m);

/// CRM in the product space: circ(z, R_W z, R_D R_W z).
Vector step_crm_product(std::span<const ConvexSet> sets, const Vector& z, double tol);

/// Iterates the configured method from x0 until the epsilon test passes or a
/// cap is hit. Everything but step_seconds is deterministic in (sets, x0,
/// config), including across sequential and parallel variants.
Trace run(std::span<const ConvexSet> sets, const Vector& x0, const SolverConfig& config);

}  // namespace polyproj
