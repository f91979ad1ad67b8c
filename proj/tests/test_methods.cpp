#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "polyproj/circumcenter.hpp"
#include "polyproj/instance.hpp"
#include "polyproj/methods.hpp"
#include "polyproj/poly_projection.hpp"

using namespace polyproj;

namespace {

constexpr double kTol = 1e-12;

Vector vec(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Ellipsoid ball(Vector c, double r) {
  const auto n = c.size();
  return Ellipsoid(std::move(c), SpdMatrix(Matrix::Identity(n, n)), r);
}

/// z1 <= 0 and z2 <= 0.
std::vector<ConvexSet> corner() {
  return {HalfSpace(vec(1, 0), 0.0), HalfSpace(vec(0, 1), 0.0)};
}

bool same_trace(const Trace& a, const Trace& b) {
  if (a.termination != b.termination || a.iterates.size() != b.iterates.size()) return false;
  for (std::size_t k = 0; k < a.iterates.size(); ++k)
    if (a.iterates[k] != b.iterates[k]) return false;
  for (std::size_t k = 0; k < a.per_iter.size(); ++k) {
    const auto& x = a.per_iter[k];
    const auto& y = b.per_iter[k];
    if (x.max_set_distance != y.max_set_distance || x.violation != y.violation ||
        x.active_cut_count != y.active_cut_count)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("method names") {
  for (Method m : kAllMethods) CHECK(parse_method(to_string(m)) == m);
  CHECK(parse_method("3PM") == Method::TPM);
  CHECK(parse_method("CRM_PROD") == Method::CRM_PROD);
  CHECK(parse_method("cimmino_par") == Method::CIMMINO_PAR);
  CHECK_FALSE(parse_method("dykstra").has_value());
  CHECK(is_parallel(Method::TPM_PAR));
  CHECK_FALSE(is_parallel(Method::SCCRM));
}

TEST_CASE("accuracy schedules and config validation") {
  const auto c = AccuracySchedule::constant(0.3);
  CHECK(c.at(0) == 0.3);
  CHECK(c.at(1000) == 0.3);
  CHECK(c.sup() == 0.3);
  const auto g = AccuracySchedule::geometric(0.9, 0.5, 0.6);
  CHECK(g.at(0) == 0.6);
  CHECK(g.at(1) == 0.45);
  CHECK(g.at(3) == doctest::Approx(0.1125));
  CHECK(g.sup() == 0.6);
  CHECK_THROWS_AS(AccuracySchedule::constant(1.0), Error);
  CHECK_THROWS_AS(AccuracySchedule::constant(-0.1), Error);
  CHECK_THROWS_AS(AccuracySchedule::geometric(0.5, 0.5, 1.0), Error);

  SolverConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.eps_stop = -1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.max_wall_seconds = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.projection_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("eps-solution test and violation") {
  const Instance inst = generate(4, 5, 9);
  const auto sets = inst.sets();
  CHECK(is_eps_solution(sets, Vector::Zero(5), 0.0));
  CHECK(violation(sets, Vector::Zero(5), 0.0) < 0.0);
  CHECK_FALSE(is_eps_solution(sets, Vector::Constant(5, 1e6), 0.0));

  // Boundary point of set 0, radially from its center.
  const Ellipsoid& e = inst.ellipsoids[0];
  Vector d = Vector::Ones(5);
  d *= e.radius() / std::sqrt(d.dot(e.shape().matrix() * d));
  const Vector b = e.center() + d;
  const std::vector<ConvexSet> only{e};
  CHECK(std::abs(violation(only, b, 0.0)) <= 1e-10 * e.radius() * e.radius());
  CHECK(is_eps_solution(only, b, 1e-3));

  std::mt19937_64 rng(1);
  for (int k = 0; k < 1000; ++k) {
    const Vector y = oracle::random_vector(rng, 5, -20, 20);
    const double eps = k % 2 ? 0.0 : 0.5;
    CHECK((violation(sets, y, eps) <= 0.0) == is_eps_solution(sets, y, eps));
  }
}

TEST_CASE("3PM step") {
  const auto sets = corner();
  const auto step = step_3pm(sets, vec(1, 1), kTol);
  CHECK(step.point.norm() <= 1e-15);
  CHECK(step.diag.cut_count == 2);
  CHECK(step.diag.active_cut_count == 2);
  CHECK_FALSE(step.diag.all_feasible);

  const auto still = step_3pm(sets, vec(-1, -2), kTol);
  CHECK(still.point == vec(-1, -2));
  CHECK(still.diag.all_feasible);
}

TEST_CASE("3PM is Fejer monotone with respect to the origin") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Instance inst = generate(5, 6, seed);
    const auto sets = inst.sets();
    Vector x = inst.x0;
    for (int k = 0; k < 10; ++k) {
      const Vector next = step_3pm(sets, x, kTol).point;
      CHECK(x.squaredNorm() >= (x - next).squaredNorm() + next.squaredNorm() - 1e-8);
      if (next == x) break;
      x = next;
    }
  }
}

TEST_CASE("MAP special case") {
  const Instance inst = generate(2, 4, 21);
  const auto sets = inst.sets();
  const Ellipsoid& u1 = inst.ellipsoids[0];
  const Ellipsoid& u2 = inst.ellipsoids[1];
  // A point on the boundary of U1 outside U2.
  Vector x = exact_project(u1, inst.x0, kTol);
  if (gauge(u1, x).value > 0.0) x = u1.center() + (1.0 - 1e-12) * (x - u1.center());
  REQUIRE(gauge(u1, x).value <= 0.0);
  REQUIRE(gauge(u2, x).value > 0.0);
  const Vector got = step_3pm(sets, x, kTol).point;
  CHECK((got - exact_project(u2, x, kTol)).norm() <= 1e-10);
}

TEST_CASE("P-CRM special case") {
  const auto sets = corner();
  const Vector x = vec(1, 1);
  const Vector c = circumcenter({x, {reflect(sets[0], x, kTol), reflect(sets[1], x, kTol)}});
  CHECK((step_3pm(sets, x, kTol).point - c).norm() <= 1e-10);

  // Oblique corner with both cuts active.
  const std::vector<ConvexSet> oblique{HalfSpace(vec(1, 0.3), 0.2), HalfSpace(vec(-0.4, 1), 0.1)};
  const Vector y = vec(2, 3);
  const auto step = step_3pm(oblique, y, kTol);
  REQUIRE(step.diag.active_cut_count == 2);
  const Vector c2 = circumcenter({y, {reflect(oblique[0], y, kTol), reflect(oblique[1], y, kTol)}});
  CHECK((step.point - c2).norm() <= 1e-10);
}

TEST_CASE("A3PM step") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Instance inst = generate(3, 5, seed);
    const auto sets = inst.sets();
    const auto a = step_a3pm(sets, inst.x0, 0.0, kTol);
    const auto b = step_3pm(sets, inst.x0, kTol);
    CHECK(a.point == b.point);
    CHECK(a.diag.active_cut_count == b.diag.active_cut_count);
  }

  const auto sets = corner();
  const auto inside = step_a3pm(sets, vec(-1, -1), 0.5, kTol);
  CHECK(inside.point == vec(-1, -1));
  CHECK(inside.diag.all_feasible);

  // Two unit balls centered at 0 and (0.5, 0), x = (2, 0):
  // Fukushima points 1.25 and 2 - 1.25 / 3; the cut of the first ball is the
  // most violated, so the step lands on its Fukushima point.
  Vector c2 = vec(0.5, 0);
  const std::vector<ConvexSet> balls{ball(Vector::Zero(2), 1.0), ball(c2, 1.0)};
  const Vector x = vec(2, 0);
  const double p1 = 1.25;
  const double p2 = 2.0 - 1.25 / 3.0;
  const double h1 = (2.0 - p1) * (2.0 - p1);
  const double h2 = (2.0 - p2) * (2.0 - p2);
  REQUIRE(h1 > h2);
  const auto step = step_a3pm(balls, x, 0.5, kTol);
  CHECK(step.point[0] == doctest::Approx(p1).epsilon(1e-15));
  CHECK(step.point[1] == 0.0);
}

TEST_CASE("A3PM is Fejer monotone with respect to the origin") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Instance inst = generate(5, 6, seed);
    const auto sets = inst.sets();
    Vector x = inst.x0;
    for (int k = 0; k < 50; ++k) {
      const Vector next = step_a3pm(sets, x, 0.5, kTol).point;
      CHECK(next.norm() <= x.norm() + 1e-9);
      x = next;
    }
  }
}

TEST_CASE("cyclic projections") {
  const auto sets = corner();
  CHECK(step_cyclic(sets, vec(-1, -1), kTol) == vec(-1, -1));
  const Vector composed = project_halfspace(std::get<HalfSpace>(sets[1]),
                                            project_halfspace(std::get<HalfSpace>(sets[0]), vec(1, 1)));
  CHECK(step_cyclic(sets, vec(1, 1), kTol) == composed);
  CHECK(composed == vec(0, 0));

  const std::vector<ConvexSet> one{ball(vec(0, 0), 1.0)};
  CHECK(step_cyclic(one, vec(3, 4), kTol) == exact_project(std::get<Ellipsoid>(one[0]), vec(3, 4), kTol));
}

TEST_CASE("Cimmino") {
  const Ellipsoid u = ball(vec(0, 0), 1.0);
  const std::vector<ConvexSet> same{u, u, u};
  CHECK((step_cimmino(same, vec(3, 4), kTol) - exact_project(u, vec(3, 4), kTol)).norm() <= 1e-15);
  // Each projection is the identity; only the averaging rounds.
  CHECK((step_cimmino(same, vec(0.1, 0.1), kTol) - vec(0.1, 0.1)).norm() <= 1e-16);

  const std::vector<ConvexSet> pair{ball(vec(-1, 0), 1.0), ball(vec(1, 0), 1.0)};
  const Vector mid = step_cimmino(pair, vec(0, 3), kTol);
  CHECK(std::abs(mid[0]) <= 1e-15);
  CHECK(mid[1] == doctest::Approx(3.0 / std::sqrt(10.0)).epsilon(1e-12));
}

TEST_CASE("SCCRM") {
  SccrmState s;
  CHECK(s.left(3) == 0);
  CHECK(s.right(3) == 1);
  s = s.next().next();
  CHECK(s.left(3) == 2);
  CHECK(s.right(3) == 0);
  CHECK(s.next().k == 3);

  // Identical pair: the step lands in the set.
  const Ellipsoid u = ball(vec(0, 0), 1.0);
  const std::vector<ConvexSet> one{u};
  const auto [p, next] = step_sccrm(one, {}, vec(3, 4), kTol);
  CHECK(gauge(u, p).value <= 1e-12);
  CHECK(next.k == 1);

  const auto sets = corner();
  CHECK(step_sccrm(sets, {}, vec(-1, -3), kTol).first == vec(-1, -3));

  // Oblique half-planes, cross-checked against hand-composed operators.
  const std::vector<ConvexSet> planes{HalfSpace(vec(1, 0.3), 0.2), HalfSpace(vec(-0.4, 1), 0.1)};
  const Vector x = vec(2, 3);
  for (std::size_t k = 0; k < 2; ++k) {
    const SccrmState st{k};
    const HalfSpace& a = std::get<HalfSpace>(planes[st.right(2)]);
    const HalfSpace& b = std::get<HalfSpace>(planes[st.left(2)]);
    const Vector z = project_halfspace(a, project_halfspace(b, x));
    const Vector w = 0.5 * (project_halfspace(a, z) + project_halfspace(b, z));
    const Vector ra = 2.0 * project_halfspace(a, w) - w;
    const Vector rb = 2.0 * project_halfspace(b, w) - w;
    const Vector expected = circumcenter({w, {ra, rb}});
    CHECK((step_sccrm(planes, st, x, kTol).first - expected).norm() <= 1e-12);
  }
}

TEST_CASE("CRM in the product space") {
  const Vector x = vec(0.5, -0.5);
  CHECK(tile(x, 3).size() == 6);
  CHECK(block_mean(tile(x, 3), 3) == x);
  Vector z(4);
  z << 1, 2, 3, 6;
  CHECK(block_mean(z, 2) == vec(2, 4));

  const std::vector<ConvexSet> balls{ball(vec(0, 0), 1.0), ball(vec(0.5, 0), 1.0)};
  CHECK(step_crm_product(balls, tile(x, 2), kTol) == tile(x, 2));

  // m = 1: R_D is the identity on a single block, so the circumcenter of
  // (z, R z, R z) is the projection.
  const Ellipsoid u = ball(vec(0, 0), 1.0);
  const std::vector<ConvexSet> one{u};
  CHECK((step_crm_product(one, vec(3, 4), kTol) - vec(0.6, 0.8)).norm() <= 1e-12);

  const std::vector<ConvexSet> planes{HalfSpace(vec(1, 0.3), 0.2), HalfSpace(vec(-0.4, 1), 0.1)};
  Vector z0(4);
  z0 << 2, 3, -1, 2;
  Vector rw(4);
  rw << 2.0 * project_halfspace(std::get<HalfSpace>(planes[0]), z0.head(2)) - z0.head(2),
      2.0 * project_halfspace(std::get<HalfSpace>(planes[1]), z0.tail(2)) - z0.tail(2);
  const Vector mean = 0.5 * (rw.head(2) + rw.tail(2));
  Vector pd(4);
  pd << mean, mean;
  const Vector rdrw = 2.0 * pd - rw;
  const Vector expected = circumcenter({z0, {rw, rdrw}});
  CHECK((step_crm_product(planes, z0, kTol) - expected).norm() <= 1e-12);
}

TEST_CASE("run records a consistent trace") {
  const Instance inst = generate(3, 2, 5);
  const auto sets = inst.sets();
  for (Method m : kAllMethods) {
    SolverConfig cfg;
    cfg.method = m;
    cfg.threads = 2;
    const Trace t = run(sets, inst.x0, cfg);
    CHECK(t.termination == Termination::EPS_SOLUTION);
    CHECK(t.iterates.size() == t.per_iter.size() + 1);
    CHECK(t.iterates.front() == inst.x0);
    CHECK(t.per_iter.back().violation <= 0.0);
    CHECK(violation(sets, t.final_point(), cfg.eps_stop) == t.per_iter.back().violation);
    for (std::size_t k = 0; k < t.per_iter.size(); ++k) {
      CHECK(t.per_iter[k].violation == violation(sets, t.iterates[k + 1], cfg.eps_stop));
      CHECK(t.per_iter[k].step_seconds >= 0.0);
    }
  }

  SolverConfig zero;
  zero.max_iters = 0;
  const Trace t = run(sets, inst.x0, zero);
  CHECK(t.iterates.size() == 1);
  CHECK(t.per_iter.empty());
  CHECK(t.termination == Termination::ITER_CAP);

  // A feasible start stops before any step, even with no iterations allowed.
  const Trace f = run(sets, Vector::Zero(2), zero);
  CHECK(f.termination == Termination::EPS_SOLUTION);
}

TEST_CASE("run honors the caps") {
  const Instance inst = generate(3, 10, 42);
  SolverConfig cfg;
  cfg.method = Method::CIMMINO;
  cfg.eps_stop = 0.0;
  cfg.max_iters = 5;
  CHECK(run(inst.sets(), inst.x0, cfg).termination == Termination::ITER_CAP);
  CHECK(run(inst.sets(), inst.x0, cfg).iterations() == 5);
  cfg.max_iters = 100000000;
  cfg.max_wall_seconds = 0.05;
  CHECK(run(inst.sets(), inst.x0, cfg).termination == Termination::TIME_CAP);
}

TEST_CASE("parallel variants match their sequential counterparts") {
  const std::pair<Method, Method> pairs[] = {
      {Method::TPM, Method::TPM_PAR}, {Method::A3PM, Method::A3PM_PAR}, {Method::CIMMINO, Method::CIMMINO_PAR}};
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const Instance inst = generate(7, 8, seed);
    for (auto [seq, par] : pairs) {
      SolverConfig a;
      a.method = seq;
      SolverConfig b = a;
      b.method = par;
      b.threads = 4;
      CHECK(same_trace(run(inst.sets(), inst.x0, a), run(inst.sets(), inst.x0, b)));
    }
  }
}
