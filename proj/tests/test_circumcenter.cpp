#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "polyproj/circumcenter.hpp"

using namespace polyproj;

namespace {

Vector vec(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

double equidistance_error(const PointSet& s, const Vector& c) {
  const double r0 = (c - s.base).norm();
  double err = 0.0;
  for (const auto& p : s.others) err = std::max(err, std::abs((c - p).norm() - r0));
  return err / (1.0 + r0);
}

}  // namespace

TEST_CASE("circumcenter examples") {
  const Vector c = circumcenter({vec(0, 0), {vec(2, 0), vec(0, 2)}});
  CHECK(std::abs(c[0] - 1.0) <= 1e-12);
  CHECK(std::abs(c[1] - 1.0) <= 1e-12);

  CHECK(circumcenter({vec(3, 4), {vec(3, 4), vec(3, 4)}}) == vec(3, 4));
  CHECK(circumcenter({vec(3, 4), {}}) == vec(3, 4));

  const PointSet refl{vec(1, 1), {vec(-1, 1), vec(1, -1)}};
  const Vector o = circumcenter(refl);
  CHECK(o.norm() <= 1e-14);
  for (const auto& p : refl.others) CHECK((o - p).norm() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("circumcenter of random affinely independent points") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = 1 + trial % 10;
    const Eigen::Index m = 1 + trial % n;
    PointSet s{oracle::random_vector(rng, n, -3, 3), {}};
    for (Eigen::Index j = 0; j < m; ++j) s.others.push_back(oracle::random_vector(rng, n, -3, 3));
    const Vector c = circumcenter(s);
    CHECK(equidistance_error(s, c) <= 1e-8);

    // c - x0 lies in span{x_j - x0}.
    Matrix dirs(n, m);
    for (Eigen::Index j = 0; j < m; ++j) dirs.col(j) = s.others[static_cast<std::size_t>(j)] - s.base;
    const Vector d = c - s.base;
    const Vector in_span = dirs * dirs.completeOrthogonalDecomposition().solve(d);
    CHECK((in_span - d).norm() <= 1e-10 * (1.0 + d.norm()));

    // Translation equivariance.
    const Vector t = oracle::random_vector(rng, n, -10, 10);
    PointSet shifted{s.base + t, {}};
    for (const auto& p : s.others) shifted.others.push_back(p + t);
    CHECK((circumcenter(shifted) - (c + t)).norm() <= 1e-10 * (1.0 + c.norm() + t.norm()));
  }
}

TEST_CASE("affinely dependent points use the minimum-norm solution") {
  // Collinear points: x0, x0 + d, x0 + 2d has no circumcenter; the result stays finite
  // and in the affine hull.
  const PointSet s{vec(0, 0), {vec(1, 1), vec(2, 2)}};
  const Vector c = circumcenter(s);
  CHECK(c.allFinite());
  CHECK(std::abs(c[0] - c[1]) <= 1e-12);

  // A repeated reflection duplicates a point; the circumcenter of the pair remains.
  const PointSet dup{vec(0, 0), {vec(2, 0), vec(2, 0)}};
  const Vector mid = circumcenter(dup);
  CHECK((mid - vec(1, 0)).norm() <= 1e-12);
}
