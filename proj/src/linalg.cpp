#include "gsp/linalg.hpp"

namespace gsp::linalg {

Matrix select_rows(const Matrix& m, std::span<const Index> rows) {
  Matrix out(static_cast<Index>(rows.size()), m.cols());
  for (size_t k = 0; k < rows.size(); ++k) out.row(static_cast<Index>(k)) = m.row(rows[k]);
  return out;
}

Vector singular_values(const Matrix& m) {
  if (m.size() == 0) return Vector();
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

Vector symmetric_eigenvalues(const Matrix& m) {
  if (m.size() == 0) return Vector();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

Index numerical_rank(const Matrix& m) {
  const Vector sv = singular_values(m);
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cut = kRankTolerance * sv(0);
  return (sv.array() > cut).count();
}

Matrix pseudo_inverse(const Matrix& m) {
  if (m.size() == 0) return Matrix::Zero(m.cols(), m.rows());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sv = svd.singularValues();
  Vector inv = Vector::Zero(sv.size());
  if (sv.size() > 0 && sv(0) > 0.0) {
    const double cut = kRankTolerance * sv(0);
    for (Index k = 0; k < sv.size(); ++k)
      if (sv(k) > cut) inv(k) = 1.0 / sv(k);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

double spectral_norm(const Matrix& m) {
  const Vector sv = singular_values(m);
  return sv.size() == 0 ? 0.0 : sv(0);
}

}  // namespace gsp::linalg
