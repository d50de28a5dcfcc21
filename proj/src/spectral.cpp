#include "gsp/spectral.hpp"

#include "gsp/jacobi.hpp"
#include "gsp/linalg.hpp"
#include "gsp/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace gsp {

VertexSet::VertexSet(Index order, std::vector<Index> members)
    : order_(order), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  for (size_t k = 0; k < members_.size(); ++k) {
    if (members_[k] < 0 || members_[k] >= order_) {
      throw ConfigError("vertex " + std::to_string(members_[k]) + " out of range for " +
                        std::to_string(order_) + " vertices");
    }
    if (k > 0 && members_[k] == members_[k - 1]) {
      throw ConfigError("duplicate vertex " + std::to_string(members_[k]) + " in vertex set");
    }
  }
}

VertexSet VertexSet::all(Index order) {
  std::vector<Index> m(static_cast<size_t>(order));
  std::iota(m.begin(), m.end(), Index{0});
  return VertexSet(order, std::move(m));
}

bool VertexSet::contains(Index v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

VertexSet VertexSet::complement() const {
  std::vector<Index> out;
  out.reserve(static_cast<size_t>(order_ - size()));
  for (Index v = 0; v < order_; ++v)
    if (!contains(v)) out.push_back(v);
  return VertexSet(order_, std::move(out));
}

VertexSet VertexSet::with(Index v) const {
  if (contains(v)) return *this;
  std::vector<Index> out = members_;
  out.push_back(v);
  return VertexSet(order_, std::move(out));
}

Vector VertexSet::indicator() const {
  Vector ind = Vector::Zero(order_);
  for (Index v : members_) ind(v) = 1.0;
  return ind;
}

Matrix VertexSet::vertex_limiting() const { return indicator().asDiagonal(); }

Matrix VertexSet::selection_matrix() const {
  Matrix p = Matrix::Zero(order_, size());
  for (Index k = 0; k < size(); ++k) p(members_[static_cast<size_t>(k)], k) = 1.0;
  return p;
}

SpectralBasis::SpectralBasis(Matrix eigenvectors, Vector eigenvalues, std::vector<Index> band)
    : eigenvectors_(std::move(eigenvectors)), eigenvalues_(std::move(eigenvalues)), band_(std::move(band)) {
  const Index n = eigenvectors_.rows();
  if (eigenvectors_.cols() != n) throw DimensionError("SpectralBasis: U must be square");
  require_size(eigenvalues_.size(), n, "SpectralBasis eigenvalues");
  if (band_.empty()) throw ConfigError("frequency band must contain at least one index");
  std::sort(band_.begin(), band_.end());
  for (size_t k = 0; k < band_.size(); ++k) {
    if (band_[k] < 0 || band_[k] >= n) {
      throw ConfigError("frequency index " + std::to_string(band_[k]) + " out of range for order " +
                        std::to_string(n));
    }
    if (k > 0 && band_[k] == band_[k - 1]) {
      throw ConfigError("duplicate frequency index " + std::to_string(band_[k]));
    }
  }
  band_vectors_.resize(n, static_cast<Index>(band_.size()));
  for (size_t k = 0; k < band_.size(); ++k) band_vectors_.col(static_cast<Index>(k)) = eigenvectors_.col(band_[k]);
}

SpectralBasis SpectralBasis::with_band(std::vector<Index> band) const {
  return SpectralBasis(eigenvectors_, eigenvalues_, std::move(band));
}

std::vector<Index> lowest_band(Index k) {
  std::vector<Index> band(static_cast<size_t>(std::max<Index>(k, 0)));
  std::iota(band.begin(), band.end(), Index{0});
  return band;
}

SpectralBasis spectral_decompose(const ShiftOperator& op, double tol) {
  const Matrix& s = op.matrix;
  if (s.rows() != s.cols()) throw DimensionError("spectral_decompose: shift must be square");
  if (s.rows() == 0) throw ConfigError("spectral_decompose: empty graph");
  SymmetricEigen eig = jacobi_eigen(s, tol);
  for (Index k = 0; k < eig.vectors.cols(); ++k) {
    auto col = eig.vectors.col(k);
    for (Index i = 0; i < col.size(); ++i) {
      if (std::abs(col(i)) > 1e-12) {
        if (col(i) < 0.0) col = -col;
        break;
      }
    }
  }
  return SpectralBasis(std::move(eig.vectors), std::move(eig.values), lowest_band(s.rows()));
}

Vector gft(const SpectralBasis& basis, const Vector& x) {
  require_size(x.size(), basis.order(), "gft signal");
  return basis.eigenvectors().transpose() * x;
}

Vector inverse_gft(const SpectralBasis& basis, const Vector& s) {
  require_size(s.size(), basis.order(), "inverse_gft coefficients");
  return basis.eigenvectors() * s;
}

Vector band_project(const SpectralBasis& basis, const Vector& x) {
  require_size(x.size(), basis.order(), "band_project signal");
  const Matrix& uf = basis.band_vectors();
  return uf * (uf.transpose() * x);
}

Matrix band_limiting(const SpectralBasis& basis) {
  const Matrix& uf = basis.band_vectors();
  return uf * uf.transpose();
}

Localization localization_test(const SpectralBasis& basis, const VertexSet& s) {
  require_size(s.order(), basis.order(), "localization_test vertex set");
  Localization out;
  if (s.empty()) return out;
  const Matrix rows = linalg::select_rows(basis.band_vectors(), s.members());
  Eigen::JacobiSVD<Matrix> svd(rows, Eigen::ComputeFullV);
  out.norm = svd.singularValues()(0);
  out.localized = std::abs(out.norm - 1.0) <= 1e-9;
  if (out.localized) {
    // Top right-singular vector w of P_Sᵀ U_F is the top eigenvector of
    // U_Fᵀ D_S U_F, so U_F w is fixed by B_F D_S B_F.
    Vector w = basis.band_vectors() * svd.matrixV().col(0);
    out.witness = w / w.norm();
  }
  return out;
}

Vector synthesize_bandlimited(const SpectralBasis& basis, const Vector& band_coefficients) {
  require_size(band_coefficients.size(), basis.bandwidth(), "band coefficients");
  return basis.band_vectors() * band_coefficients;
}

Vector synthesize_bandlimited(const SpectralBasis& basis, std::uint64_t seed) {
  Rng rng(seed);
  Vector s(basis.bandwidth());
  for (Index k = 0; k < s.size(); ++k) s(k) = rng.normal();
  return synthesize_bandlimited(basis, s);
}

}  // namespace gsp
