#include "dhgl/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dhgl {

EigenDecomposition eig_sym(const SymMatrix& X) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(X.mat());
  if (es.info() != Eigen::Success) {
    throw std::runtime_error(
        "eig_sym: eigensolver failed to converge (p = " +
        std::to_string(X.dim()) + ", ||X||_max = " +
        std::to_string(X.mat().cwiseAbs().maxCoeff()) + ")");
  }
  // Eigen returns ascending order; flip to descending.
  EigenDecomposition ed;
  ed.vals = es.eigenvalues().reverse();
  ed.vecs = es.eigenvectors().rowwise().reverse();
  return ed;
}

SymMatrix add_transpose(const Matrix& V) {
  return SymMatrix::FromExact(V + V.transpose());
}

Matrix add_transpose_adj(const SymMatrix& Y) { return 2.0 * Y.mat(); }

Vector offdiag_col(const Matrix& X, Index j) {
  Vector c = X.col(j);
  c(j) = 0.0;
  return c;
}

Vector offdiag_stack(const Matrix& X) {
  const Index p = X.rows();
  Vector y(p * p);
  for (Index j = 0; j < p; ++j) {
    y.segment(j * p, p) = X.col(j);
    y(j * p + j) = 0.0;
  }
  return y;
}

Matrix offdiag_unstack(const Vector& y) {
  const auto p = static_cast<Index>(std::llround(std::sqrt(double(y.size()))));
  if (p * p != y.size()) {
    throw std::invalid_argument("offdiag_unstack: length is not a square");
  }
  Matrix X(p, p);
  for (Index j = 0; j < p; ++j) {
    X.col(j) = y.segment(j * p, p);
    X(j, j) = 0.0;
  }
  return X;
}

}  // namespace dhgl
