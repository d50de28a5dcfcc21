#include "gsp/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace gsp {

namespace {

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (Index q = 1; q < a.cols(); ++q)
    for (Index p = 0; p < q; ++p) sum += a(p, q) * a(p, q);
  return std::sqrt(2.0 * sum);
}

// Annihilates a(p, q) with one plane rotation; a is kept symmetric.
void rotate(Matrix& a, Matrix& v, Index p, Index q) {
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Index n = a.rows();

  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (Index k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = a(p, k) = c * akp - s * akq;
    a(k, q) = a(q, k) = s * akp + c * akq;
  }
  for (Index k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace

SymmetricEigen jacobi_eigen(const Matrix& input, double rel_tol, int max_sweeps) {
  if (input.rows() != input.cols()) throw DimensionError("jacobi_eigen: matrix must be square");
  const Index n = input.rows();
  Matrix a = input.selfadjointView<Eigen::Upper>();
  Matrix v = Matrix::Identity(n, n);
  const double threshold = rel_tol * a.norm();

  int sweeps = 0;
  double off = off_diagonal_norm(a);
  while (off > threshold) {
    if (sweeps == max_sweeps) {
      throw NumericalError("jacobi_eigen: no convergence after " + std::to_string(max_sweeps) +
                               " sweeps (off-diagonal norm " + std::to_string(off) + ")",
                           off);
    }
    for (Index p = 0; p + 1 < n; ++p)
      for (Index q = p + 1; q < n; ++q)
        if (a(p, q) != 0.0) rotate(a, v, p, q);
    ++sweeps;
    off = off_diagonal_norm(a);
  }

  std::vector<Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) { return a(x, x) < a(y, y); });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    const Index src = order[static_cast<size_t>(k)];
    out.values(k) = a(src, src);
    out.vectors.col(k) = v.col(src);
  }
  out.sweeps = sweeps;
  out.off_norm = off;
  return out;
}

}  // namespace gsp
