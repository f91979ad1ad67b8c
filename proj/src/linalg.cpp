#include "polyproj/linalg.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace polyproj {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonConvergence: return "NonConvergence";
    case Errc::EmptyPolyhedronSuspected: return "EmptyPolyhedronSuspected";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::GenerationFailed: return "GenerationFailed";
    case Errc::IoError: return "IoError";
    case Errc::SchemaVersionMismatch: return "SchemaVersionMismatch";
    case Errc::ValidationError: return "ValidationError";
    case Errc::UnknownMethod: return "UnknownMethod";
    case Errc::DimensionNot2D: return "DimensionNot2D";
  }
  return "Unknown";
}

void require_finite(const Vector& v, std::string_view what) {
  if (!v.allFinite()) {
    throw Error(Errc::ValidationError, std::string(what) + " has non-finite entries");
  }
}

TriangularFactor factorize(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(Errc::DimensionMismatch, "factorize expects a non-empty square matrix");
  }
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) {
    throw Error(Errc::NotPositiveDefinite, "Cholesky pivot is not positive");
  }
  return TriangularFactor{llt.matrixL()};
}

Vector solve_spd(const TriangularFactor& f, const Vector& rhs) {
  if (rhs.size() != f.dim()) {
    throw Error(Errc::DimensionMismatch, "solve_spd: rhs has size " + std::to_string(rhs.size()) +
                                             ", factor has size " + std::to_string(f.dim()));
  }
  const auto lower = f.lower.triangularView<Eigen::Lower>();
  Vector y = lower.solve(rhs);
  return lower.transpose().solve(y);
}

SpdMatrix::SpdMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw Error(Errc::ValidationError, "shape matrix must be square and non-empty");
  }
  if (!m_.allFinite()) {
    throw Error(Errc::ValidationError, "shape matrix has non-finite entries");
  }
  for (Eigen::Index i = 0; i < m_.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m_.cols(); ++j) {
      if (m_(i, j) != m_(j, i)) {
        throw Error(Errc::ValidationError, "shape matrix is not symmetric at (" + std::to_string(i) +
                                               "," + std::to_string(j) + ")");
      }
    }
  }
  factor_ = factorize(m_);
}

double spectral_norm(const Matrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(Errc::DimensionMismatch, "spectral_norm expects a non-empty square matrix");
  }
  if (!(tol > 0.0)) {
    throw Error(Errc::InvalidArgument, "spectral_norm tolerance must be positive");
  }
  constexpr int kMaxIterations = 10000;

  Vector v = Vector::Ones(m.rows()) / std::sqrt(static_cast<double>(m.rows()));
  double theta = std::numeric_limits<double>::quiet_NaN();
  double prev_delta = std::numeric_limits<double>::infinity();
  for (int it = 0; it < kMaxIterations; ++it) {
    Vector w = m * v;
    const double next = v.dot(w);
    const double residual = (w - next * v).norm();
    const double w_norm = w.norm();
    if (w_norm == 0.0) return 0.0;

    if (residual <= tol * std::abs(next)) return next;
    if (!std::isnan(theta)) {
      const double delta = std::abs(next - theta);
      // Geometric tail estimate of the remaining Rayleigh-quotient error.
      const double tail = prev_delta > delta ? delta * delta / (prev_delta - delta) : delta;
      if (delta <= tol * next && tail <= tol * next) return next;
      prev_delta = delta;
    }
    theta = next;
    v = w / w_norm;
  }
  throw Error(Errc::NonConvergence, "power iteration did not converge in 10000 iterations");
}

Vector solve_symmetric(const Matrix& g, const Vector& rhs) {
  if (g.rows() != g.cols() || g.rows() != rhs.size()) {
    throw Error(Errc::DimensionMismatch, "solve_symmetric: inconsistent system dimensions");
  }
  if (g.rows() == 0) return Vector(0);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(g);
  const Vector& lambda = eig.eigenvalues();
  const Matrix& basis = eig.eigenvectors();
  const double lambda_max = lambda.cwiseAbs().maxCoeff();
  if (lambda_max == 0.0) return Vector::Zero(rhs.size());

  const double cutoff = 1e-12 * lambda_max;
  Vector coeffs = basis.transpose() * rhs;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    coeffs[i] = lambda[i] > cutoff ? coeffs[i] / lambda[i] : 0.0;
  }
  return basis * coeffs;
}

}  // namespace polyproj
