#pragma once

#include "gsp/types.hpp"

namespace gsp {

struct SymmetricEigen {
  Vector values;   ///< ascending
  Matrix vectors;  ///< column k pairs with values(k)
  int sweeps = 0;
  double off_norm = 0.0;  ///< off-diagonal Frobenius norm at exit
};

/// Cyclic Jacobi eigensolver for dense symmetric matrices.
///
/// Sweeps over all (p, q) pairs in row order until the off-diagonal
/// Frobenius norm drops to `rel_tol * ||a||_F`. Only the upper triangle of
/// `a` is read. Eigenvalues come back ascending; equal values keep the order
/// of the diagonal position they converged on. Throws NumericalError carrying
/// the off-diagonal norm when `max_sweeps` is exhausted.
SymmetricEigen jacobi_eigen(const Matrix& a, double rel_tol = 1e-12, int max_sweeps = 100);

}  // namespace gsp
