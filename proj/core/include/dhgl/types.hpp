#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <utility>

namespace dhgl {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Dense symmetric matrix. Construction symmetrizes (X + X^T)/2 when the
/// asymmetry is at roundoff level (<= 1e-12 * ||X||_F) and throws otherwise,
/// so genuinely asymmetric inputs are rejected instead of silently averaged.
class SymMatrix {
 public:
  SymMatrix() = default;

  explicit SymMatrix(Matrix X) : m_(std::move(X)) {
    if (m_.rows() != m_.cols()) {
      throw std::invalid_argument("SymMatrix: input is not square");
    }
    const double asym = (m_ - m_.transpose()).norm();
    if (asym > 0.0) {
      if (asym > 1e-12 * m_.norm()) {
        throw std::invalid_argument(
            "SymMatrix: input asymmetry " + std::to_string(asym) +
            " exceeds 1e-12 * ||X||");
      }
      m_ = ((m_ + m_.transpose()) * 0.5).eval();
    }
    if (!m_.allFinite()) {
      throw std::invalid_argument("SymMatrix: non-finite entries");
    }
  }

  static SymMatrix Zero(Index p) { return SymMatrix(trusted{}, Matrix::Zero(p, p)); }
  static SymMatrix Identity(Index p) {
    return SymMatrix(trusted{}, Matrix::Identity(p, p));
  }
  /// Wraps a matrix that is symmetric by construction (e.g. V + V^T, a + a^T
  /// sums of symmetric terms). Debug builds assert, release trusts the caller.
  static SymMatrix FromExact(Matrix X) {
    eigen_assert(X.rows() == X.cols());
    return SymMatrix(trusted{}, std::move(X));
  }

  Index dim() const { return m_.rows(); }
  const Matrix& mat() const { return m_; }
  double operator()(Index i, Index j) const { return m_(i, j); }
  double norm() const { return m_.norm(); }

 private:
  struct trusted {};
  SymMatrix(trusted, Matrix X) : m_(std::move(X)) {}
  Matrix m_;
};

}  // namespace dhgl
