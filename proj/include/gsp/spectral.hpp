#pragma once

#include "gsp/graph.hpp"
#include "gsp/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace gsp {

/// Sorted, duplicate-free subset of {0..order-1}.
class VertexSet {
 public:
  VertexSet() = default;
  /// Sorts `members`; throws ConfigError on duplicates or out-of-range ids.
  VertexSet(Index order, std::vector<Index> members);
  static VertexSet all(Index order);

  Index order() const noexcept { return order_; }
  Index size() const noexcept { return static_cast<Index>(members_.size()); }
  bool empty() const noexcept { return members_.empty(); }
  const std::vector<Index>& members() const noexcept { return members_; }
  bool contains(Index v) const;

  VertexSet complement() const;
  VertexSet with(Index v) const;

  /// 1_S
  Vector indicator() const;
  /// D_S = diag(1_S)
  Matrix vertex_limiting() const;
  /// P_S, columns are the indicator vectors of the members.
  Matrix selection_matrix() const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  Index order_ = 0;
  std::vector<Index> members_;
};

/// Orthonormal eigenbasis of a shift operator together with a chosen band F.
class SpectralBasis {
 public:
  SpectralBasis(Matrix eigenvectors, Vector eigenvalues, std::vector<Index> band);

  Index order() const noexcept { return eigenvectors_.rows(); }
  Index bandwidth() const noexcept { return static_cast<Index>(band_.size()); }
  const Matrix& eigenvectors() const noexcept { return eigenvectors_; }
  const Vector& eigenvalues() const noexcept { return eigenvalues_; }
  const std::vector<Index>& band() const noexcept { return band_; }
  /// U_F: the columns of U whose indices are in F.
  const Matrix& band_vectors() const noexcept { return band_vectors_; }

  SpectralBasis with_band(std::vector<Index> band) const;

 private:
  Matrix eigenvectors_;
  Vector eigenvalues_;
  std::vector<Index> band_;
  Matrix band_vectors_;
};

/// {0, ..., k-1}: the k lowest frequencies.
std::vector<Index> lowest_band(Index k);

/// Eigendecomposition of a symmetric shift via cyclic Jacobi. The returned
/// band is the full index set. In each eigenvector, the first entry larger
/// than 1e-12 in magnitude is made positive.
SpectralBasis spectral_decompose(const ShiftOperator& op, double tol = 1e-12);

/// s = Uᵀx
Vector gft(const SpectralBasis& basis, const Vector& x);
/// x = U s
Vector inverse_gft(const SpectralBasis& basis, const Vector& s);

/// B_F x
Vector band_project(const SpectralBasis& basis, const Vector& x);
/// B_F = U_F U_Fᵀ
Matrix band_limiting(const SpectralBasis& basis);

struct Localization {
  double norm = 0.0;  ///< ||D_S U_F||_2
  bool localized = false;
  std::optional<Vector> witness;  ///< unit-norm signal in B_F ∩ D_S, when localized
};

Localization localization_test(const SpectralBasis& basis, const VertexSet& s);

/// x = U_F s_F
Vector synthesize_bandlimited(const SpectralBasis& basis, const Vector& band_coefficients);
/// Bandlimited signal with i.i.d. standard normal in-band coefficients.
Vector synthesize_bandlimited(const SpectralBasis& basis, std::uint64_t seed);

}  // namespace gsp
