#pragma once

// Small dense helpers shared by the design and recovery code. These operate on
// |F|-sized or |S|×|F| matrices and delegate to Eigen's decompositions.

#include "gsp/types.hpp"

#include <span>

namespace gsp::linalg {

/// Relative threshold below which singular values / eigenvalues count as zero.
inline constexpr double kRankTolerance = 1e-10;

Matrix select_rows(const Matrix& m, std::span<const Index> rows);

/// Singular values, descending.
Vector singular_values(const Matrix& m);

/// Eigenvalues of a symmetric matrix, ascending.
Vector symmetric_eigenvalues(const Matrix& m);

/// Number of singular values above kRankTolerance · σ_max.
Index numerical_rank(const Matrix& m);

/// Moore-Penrose pseudo-inverse via SVD, dropping σ ≤ kRankTolerance · σ_max.
Matrix pseudo_inverse(const Matrix& m);

/// Largest singular value; 0 for empty matrices.
double spectral_norm(const Matrix& m);

}  // namespace gsp::linalg
