#pragma once

#include <Eigen/Dense>

#include "polyproj/error.hpp"

namespace polyproj {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Throws ValidationError if any entry is NaN or Inf.
void require_finite(const Vector& v, std::string_view what);

/// Lower-triangular Cholesky factor F with F * F^T = M.
struct TriangularFactor {
  Matrix lower;

  Eigen::Index dim() const { return lower.rows(); }
};

/// Symmetric positive definite matrix. Symmetry is exact (M(i,j) == M(j,i)
/// bitwise); positive definiteness is certified by a successful Cholesky
/// factorization at construction.
class SpdMatrix {
 public:
  /// Throws ValidationError if `m` is not square or not exactly symmetric,
  /// NotPositiveDefinite if the factorization fails.
  explicit SpdMatrix(Matrix m);

  const Matrix& matrix() const { return m_; }
  const TriangularFactor& factor() const { return factor_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
  TriangularFactor factor_;
};

TriangularFactor factorize(const Matrix& m);
Vector solve_spd(const TriangularFactor& f, const Vector& rhs);

/// Largest eigenvalue of an SPD matrix by power iteration from the normalized
/// all-ones vector. Throws NonConvergence after 10 000 iterations.
double spectral_norm(const Matrix& m, double tol);

/// Solves a symmetric positive semidefinite system (a Gram matrix). Near
/// singular systems get the minimum-norm least-squares solution; eigenvalues
/// below 1e-12 * lambda_max are treated as zero.
Vector solve_symmetric(const Matrix& g, const Vector& rhs);

}  // namespace polyproj
