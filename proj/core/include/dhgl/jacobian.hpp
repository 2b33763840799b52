#pragma once

#include <vector>

#include "dhgl/hyperparams.hpp"
#include "dhgl/linalg.hpp"
#include "dhgl/prox.hpp"
#include "dhgl/types.hpp"

namespace dhgl {

/// Frechet derivative of pd_split_pos at X: H -> P (M o (P^T H P)) P^T with
/// Loewner-type coefficients
///   M_ij = (pos(d_i) + pos(d_j)) / (sqrt(d_i^2+4g) + sqrt(d_j^2+4g)),
/// all strictly inside (0, 1). P and M are cached; building costs one
/// eigendecomposition, applying costs matrix products only.
struct LogDetProxDeriv {
  Matrix P;
  Matrix M;

  Matrix apply(const Matrix& H) const {
    Matrix T = P.transpose() * H * P;
    T.array() *= M.array();
    Matrix R = P * T * P.transpose();
    return 0.5 * (R + R.transpose());
  }
};

LogDetProxDeriv logdet_prox_deriv(const SymMatrix& X, double gamma);
/// From a precomputed eigendecomposition of X (avoids a second eig).
LogDetProxDeriv logdet_prox_deriv(const EigenDecomposition& ed, double gamma);

/// Generalized Jacobian element of prox_{scale * edge-l1} at A:
/// H -> active o H where active_ij = 1 iff |A_ij| > threshold or i == j.
/// Ties |A_ij| == threshold take the shrunk (inactive) side, active = 0.
struct EdgeL1Jacobian {
  Matrix active;

  Matrix apply(const Matrix& H) const { return active.cwiseProduct(H); }
};

EdgeL1Jacobian edge_l1_jacobian(const SymMatrix& A, double threshold);

/// Per-column piece of the group part: either the identity or the rank-1
/// corrected scaling factor * (I - zhat zhat^T).
struct ColL2Deriv {
  bool is_identity = true;
  double factor = 0.0;
  Vector zhat;
};

/// Generalized Jacobian element of prox_{sigma * column sparse-group} at B:
///   H -> G - Pstar Diag(ColL2Deriv_j) P(G),  G = psi_active o H,
/// with psi_active_ij = 1 iff |B_ij| > sigma * w1_j or i == j, and the
/// column operators built at z_j = offdiag col j of prox_col_l1(B, sigma).
struct ColSparseGroupJacobian {
  Matrix psi_active;
  std::vector<ColL2Deriv> cols;

  Matrix apply(const Matrix& H) const;
};

ColSparseGroupJacobian col_sparse_group_jacobian(const Matrix& B,
                                                 const Hyperparams& hp,
                                                 double sigma);
/// Variant reusing an already computed prox_col_l1(B, hp, sigma).
ColSparseGroupJacobian col_sparse_group_jacobian(const Matrix& B,
                                                 const Matrix& prox_l1_of_B,
                                                 const Hyperparams& hp,
                                                 double sigma);

/// The assembled Newton operator on symmetric matrices:
///   W[H] = sigma * (logdet[H] + edge[H] + 4 * sym(group[H])).
/// Self-adjoint and positive definite; the group part is symmetrized because
/// it acts on general matrices while H is symmetric.
struct NewtonOperator {
  const LogDetProxDeriv* logdet = nullptr;
  const EdgeL1Jacobian* edge = nullptr;
  const ColSparseGroupJacobian* group = nullptr;
  double sigma = 1.0;

  Matrix apply(const Matrix& H) const;
};

/// Diagonal preconditioner for the Newton system:
///   D_ij = ((P o P) M (P o P)^T)_ij + edge.active_ij + 4 * group.psi_active_ij.
/// The preconditioner acts by elementwise division; if any entry is
/// nonpositive (floating-point edge case) an all-ones matrix is returned
/// with a warning.
Matrix precond_diag(const LogDetProxDeriv& logdet, const EdgeL1Jacobian& edge,
                    const ColSparseGroupJacobian& group);

namespace detail {
/// Replaces D by all-ones when it has a nonpositive entry; returns true if
/// the fallback fired.
bool fallback_if_nonpositive(Matrix& D);
}  // namespace detail

}  // namespace dhgl
