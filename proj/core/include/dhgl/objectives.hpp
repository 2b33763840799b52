#pragma once

#include "dhgl/hyperparams.hpp"
#include "dhgl/types.hpp"

namespace dhgl {

/// log det of a symmetric matrix via Cholesky; -inf when not positive
/// definite.
double logdet_psd(const SymMatrix& X);
double logdet_psd(const Matrix& X);

/// <S, Theta> - logdet(Theta) + edge and column penalties. +inf when Theta is
/// not positive definite.
double primal_objective(const SymMatrix& Theta, const SymMatrix& Z,
                        const Matrix& V, const SymMatrix& S,
                        const Hyperparams& hp);

/// logdet(Omega) + p when (Y, Lambda) lie in the conjugate-ball sets (their
/// indicator conjugates are then zero), -inf otherwise or when Omega is not
/// positive definite. Ball membership is measured through the prox-distance
/// identity dist(x, set) = ||prox_penalty(x)|| with tolerance
/// 1e-6 * (1 + ||x||).
double dual_objective(const SymMatrix& Y, const SymMatrix& Omega,
                      const Matrix& Lambda, const Hyperparams& hp);

}  // namespace dhgl
