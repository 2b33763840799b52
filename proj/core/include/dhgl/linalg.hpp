#pragma once

#include "dhgl/types.hpp"

namespace dhgl {

/// Eigendecomposition X = P Diag(d) P^T with d sorted in descending order
/// and P orthonormal.
struct EigenDecomposition {
  Vector vals;
  Matrix vecs;
};

/// Full symmetric eigendecomposition. Throws on solver failure with the
/// matrix scale in the message.
EigenDecomposition eig_sym(const SymMatrix& X);

/// V + V^T.
SymMatrix add_transpose(const Matrix& V);

/// Adjoint of add_transpose on symmetric matrices: 2 Y.
Matrix add_transpose_adj(const SymMatrix& Y);

/// Column j of X with the diagonal entry zeroed (length p).
Vector offdiag_col(const Matrix& X, Index j);

/// Stacks the columns of X into a length-p^2 vector, zeroing each diagonal
/// entry first (block j = column j).
Vector offdiag_stack(const Matrix& X);

/// Adjoint of offdiag_stack: places block j into column j and forces the
/// diagonal to zero.
Matrix offdiag_unstack(const Vector& y);

}  // namespace dhgl
