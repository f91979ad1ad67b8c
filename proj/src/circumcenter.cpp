#include "polyproj/circumcenter.hpp"

namespace polyproj {

Vector circumcenter(const PointSet& points) {
  const Vector& x0 = points.base;
  const double drop = 1e-14 * (1.0 + x0.norm());

  std::vector<Vector> diffs;
  diffs.reserve(points.others.size());
  for (const auto& p : points.others) {
    if (p.size() != x0.size()) throw Error(Errc::DimensionMismatch, "circumcenter points differ in dimension");
    Vector d = p - x0;
    if (d.norm() > drop) diffs.push_back(std::move(d));
  }
  if (diffs.empty()) return x0;

  const auto k = static_cast<Eigen::Index>(diffs.size());
  Matrix basis(x0.size(), k);
  for (Eigen::Index j = 0; j < k; ++j) basis.col(j) = diffs[static_cast<std::size_t>(j)];
  // The Gram system G alpha = diag(G) / 2 with G = D^T D is solved as the
  // minimum-norm least-squares problem D^T v = diag(G) / 2, v = D alpha, which
  // avoids squaring the condition number of D. Rank threshold 1e-6 on R
  // matches the 1e-12 eigenvalue cutoff on G.
  Vector rhs(k);
  for (Eigen::Index j = 0; j < k; ++j) rhs[j] = 0.5 * basis.col(j).squaredNorm();
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(basis.transpose());
  cod.setThreshold(1e-6);
  return x0 + cod.solve(rhs);
}

}  // namespace polyproj
