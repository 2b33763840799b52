#include "dhgl/jacobian.hpp"

#include <cmath>
#include <iostream>

namespace dhgl {

LogDetProxDeriv logdet_prox_deriv(const EigenDecomposition& ed, double gamma) {
  const Index p = ed.vals.size();
  auto [pos, neg] = pd_split_spectrum(ed.vals, gamma);
  // sqrt(d^2 + 4 gamma) = pos + neg, cancellation-free.
  Vector s = pos + neg;
  LogDetProxDeriv J;
  J.P = ed.vecs;
  J.M.resize(p, p);
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < p; ++i) {
      J.M(i, j) = (pos(i) + pos(j)) / (s(i) + s(j));
    }
  }
  return J;
}

LogDetProxDeriv logdet_prox_deriv(const SymMatrix& X, double gamma) {
  return logdet_prox_deriv(eig_sym(X), gamma);
}

EdgeL1Jacobian edge_l1_jacobian(const SymMatrix& A, double threshold) {
  const Index p = A.dim();
  EdgeL1Jacobian J;
  J.active.resize(p, p);
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < p; ++i) {
      J.active(i, j) =
          (i == j || std::abs(A(i, j)) > threshold) ? 1.0 : 0.0;
    }
  }
  return J;
}

ColSparseGroupJacobian col_sparse_group_jacobian(const Matrix& B,
                                                 const Matrix& prox_l1_of_B,
                                                 const Hyperparams& hp,
                                                 double sigma) {
  const Index p = B.rows();
  ColSparseGroupJacobian J;
  J.psi_active.resize(p, p);
  for (Index j = 0; j < p; ++j) {
    const double thr = sigma * hp.w1(j);
    for (Index i = 0; i < p; ++i) {
      J.psi_active(i, j) =
          (i == j || std::abs(B(i, j)) > thr) ? 1.0 : 0.0;
    }
  }
  J.cols.resize(static_cast<std::size_t>(p));
  for (Index j = 0; j < p; ++j) {
    Vector z = offdiag_col(prox_l1_of_B, j);
    const double n = z.norm();
    const double r = sigma * hp.w2(j);
    ColL2Deriv& op = J.cols[static_cast<std::size_t>(j)];
    if (n > r) {
      op.is_identity = false;
      op.factor = r / n;
      op.zhat = z / n;
    }
    // ||z|| <= r (ties included) keeps the identity element.
  }
  return J;
}

ColSparseGroupJacobian col_sparse_group_jacobian(const Matrix& B,
                                                 const Hyperparams& hp,
                                                 double sigma) {
  return col_sparse_group_jacobian(B, prox_col_l1(B, hp, sigma), hp, sigma);
}

Matrix ColSparseGroupJacobian::apply(const Matrix& H) const {
  Matrix G = psi_active.cwiseProduct(H);
  Matrix R = G;
  const Index p = H.rows();
  for (Index j = 0; j < p; ++j) {
    const ColL2Deriv& op = cols[static_cast<std::size_t>(j)];
    Vector g = offdiag_col(G, j);
    Vector corr;
    if (op.is_identity) {
      corr = g;
    } else {
      corr = op.factor * (g - op.zhat * op.zhat.dot(g));
    }
    const double diag = R(j, j);
    R.col(j) -= corr;
    R(j, j) = diag;
  }
  return R;
}

Matrix NewtonOperator::apply(const Matrix& H) const {
  Matrix G = group->apply(H);
  Matrix R = logdet->apply(H) + edge->apply(H) + 2.0 * (G + G.transpose());
  return sigma * R;
}

namespace detail {

bool fallback_if_nonpositive(Matrix& D) {
  if (D.minCoeff() > 0.0) return false;
  std::cerr << "dhgl: warning: nonpositive preconditioner entry, falling "
               "back to the identity preconditioner\n";
  D = Matrix::Ones(D.rows(), D.cols());
  return true;
}

}  // namespace detail

Matrix precond_diag(const LogDetProxDeriv& logdet, const EdgeL1Jacobian& edge,
                    const ColSparseGroupJacobian& group) {
  const Matrix PP = logdet.P.cwiseProduct(logdet.P);
  Matrix D = PP * logdet.M * PP.transpose();
  D += edge.active + 4.0 * group.psi_active;
  detail::fallback_if_nonpositive(D);
  return D;
}

}  // namespace dhgl
