#pragma once

#include <utility>

#include "dhgl/hyperparams.hpp"
#include "dhgl/linalg.hpp"
#include "dhgl/types.hpp"

namespace dhgl {

// ---------------------------------------------------------------------------
// Smoothed spectral splitting. For gamma > 0 every symmetric X decomposes as
//   X = pos - neg,  pos * neg = gamma * I,  pos, neg both positive definite,
// where pos/neg apply the scalar maps ((x^2 + 4 gamma)^(1/2) +- x)/2 to the
// spectrum. pos is exactly the proximal map of -gamma*logdet.
// ---------------------------------------------------------------------------

/// Scalar pair (pos, neg); computed cancellation-free from either branch so
/// that pos * neg == gamma holds to machine precision.
std::pair<double, double> pd_split_scalar(double x, double gamma);

/// Spectral pos/neg values for a whole eigenvalue vector.
std::pair<Vector, Vector> pd_split_spectrum(const Vector& d, double gamma);

SymMatrix pd_split_pos(const SymMatrix& X, double gamma);
SymMatrix pd_split_neg(const SymMatrix& X, double gamma);
/// Both factors from a single eigendecomposition.
std::pair<SymMatrix, SymMatrix> pd_split(const SymMatrix& X, double gamma);
/// Reassemble P Diag(vals) P^T.
SymMatrix assemble(const EigenDecomposition& ed, const Vector& vals);

/// argmin over PD matrices of (1/(2 sigma)) ||G - W||^2 - logdet(W).
SymMatrix prox_logdet(const SymMatrix& G, double sigma);

/// The minimum value of the same problem:
/// (1/(2 sigma)) ||pd_split_neg(G, sigma)||^2 - logdet(pd_split_pos(G, sigma)).
double logdet_envelope(const SymMatrix& G, double sigma);

// ---------------------------------------------------------------------------
// Vector projections.
// ---------------------------------------------------------------------------

/// Elementwise clamp to [-radius, radius].
Vector proj_linf(const Vector& y, double radius);

/// Euclidean projection onto the 2-norm ball of the given radius.
Vector proj_l2(const Vector& y, double radius);

// ---------------------------------------------------------------------------
// Proximal maps of the regularizers. All take an explicit `scale` t and
// compute prox_{t f}; weights are never pre-scaled by callers.
// ---------------------------------------------------------------------------

/// prox of t * lam1 * ||offdiag(.)||_1 on symmetric matrices: soft-thresholds
/// every off-diagonal entry by t * lam1, diagonal untouched.
SymMatrix prox_edge_l1(const SymMatrix& Y, double lam1, double scale);

/// Columnwise weighted l1 part: entry (i, j), i != j, soft-thresholded by
/// scale * w1_j; diagonal untouched.
Matrix prox_col_l1(const Matrix& Y, const Hyperparams& hp, double scale);

/// Columnwise group part: each off-diagonal column vector shrunk to zero if
/// its norm is <= scale * w2_j (boundary included), else scaled by
/// (1 - scale * w2_j / norm).
Matrix prox_col_l2(const Matrix& X, const Hyperparams& hp, double scale);

/// prox of the full column penalty sum_j (w1_j ||.||_1 + w2_j ||.||_2):
/// the exact composition prox_col_l2(prox_col_l1(Y)). Order matters.
Matrix prox_col_sparse_group(const Matrix& Y, const Hyperparams& hp,
                             double scale);

/// prox_{f*/t}(x) computed through the Moreau identity
///   prox_{t f}(u) + t prox_{f*/t}(u / t) = u
/// from a callable prox_tf(u, t) evaluating prox_{t f}(u).
template <class ProxTf, class Arg>
Arg prox_conj(ProxTf&& prox_tf, double t, const Arg& x) {
  return x - prox_tf(t * x, t) / t;
}

SymMatrix prox_edge_l1_conj(const SymMatrix& x, double lam1, double t);
Matrix prox_col_sparse_group_conj(const Matrix& x, const Hyperparams& hp,
                                  double t);

// ---------------------------------------------------------------------------
// Regularizer values.
// ---------------------------------------------------------------------------

/// lam1 * sum_{i != j} |Z_ij|.
double edge_l1_value(const SymMatrix& Z, double lam1);

/// sum_j (w1_j ||offdiag col j||_1 + w2_j ||offdiag col j||_2).
double col_sparse_group_value(const Matrix& V, const Hyperparams& hp);

}  // namespace dhgl
