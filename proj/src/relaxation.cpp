#include "gsp/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace gsp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_weights(const SpectralBasis& basis, const Vector& d) {
  require_size(d.size(), basis.order(), "relaxed design weights");
}

// G(d) = U_Fᵀ diag(d ./ r²) U_F
Matrix weighted_information(const SpectralBasis& basis, const Vector& d, const NoiseModel& noise) {
  const Matrix& uf = basis.band_vectors();
  const Vector w = d.cwiseQuotient(noise.variances);
  return uf.transpose() * w.asDiagonal() * uf;
}

struct MinSingularPair {
  double value = 0.0;
  Vector left;   // length n
  Vector right;  // length |F|
};

MinSingularPair min_singular_pair(const SpectralBasis& basis, const Vector& d) {
  const Matrix m = d.asDiagonal() * basis.band_vectors();
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Index k = svd.singularValues().size() - 1;
  return {svd.singularValues()(k), svd.matrixU().col(k), svd.matrixV().col(k)};
}

}  // namespace

double relaxed_objective(const DesignCriterion& criterion, const SpectralBasis& basis, const Vector& d) {
  check_weights(basis, d);
  if (criterion.kind == CriterionKind::e_optimal) return -min_singular_pair(basis, d).value;

  const Matrix g = weighted_information(basis, d, criterion.noise);
  Eigen::LLT<Matrix> llt(g);
  if (llt.info() != Eigen::Success) return kInf;
  if (criterion.kind == CriterionKind::d_optimal) {
    return -2.0 * llt.matrixLLT().diagonal().array().log().sum();
  }
  return llt.solve(Matrix::Identity(g.rows(), g.cols())).trace();
}

Vector relaxed_gradient(const DesignCriterion& criterion, const SpectralBasis& basis, const Vector& d) {
  check_weights(basis, d);
  const Matrix& uf = basis.band_vectors();
  const Index n = basis.order();

  if (criterion.kind == CriterionKind::e_optimal) {
    // σ_min = yᵀ diag(d) U_F z, so ∂σ/∂d_i = y_i (U_F z)_i.
    const MinSingularPair sp = min_singular_pair(basis, d);
    return -(sp.left.array() * (uf * sp.right).array()).matrix();
  }

  const Matrix g = weighted_information(basis, d, criterion.noise);
  Eigen::LLT<Matrix> llt(g);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("relaxed_gradient: information matrix is singular", 0.0);
  }
  const Matrix ginv = llt.solve(Matrix::Identity(g.rows(), g.cols()));
  // A: ∂Tr(G⁻¹)/∂d_i = −u_iᵀ G⁻² u_i / r_i²;  D: ∂(−log det G)/∂d_i = −u_iᵀ G⁻¹ u_i / r_i².
  const Matrix kernel = criterion.kind == CriterionKind::a_optimal ? Matrix(ginv * ginv) : ginv;
  const Matrix t = uf * kernel;
  Vector grad(n);
  for (Index i = 0; i < n; ++i) grad(i) = -t.row(i).dot(uf.row(i)) / criterion.noise.variances(i);
  return grad;
}

Vector project_capped_simplex(const Vector& v, double total) {
  const Index n = v.size();
  if (total < 0.0 || total > static_cast<double>(n)) {
    throw ConfigError("capped simplex total " + std::to_string(total) + " outside [0, " + std::to_string(n) + "]");
  }
  auto mass = [&](double tau) { return (v.array() - tau).max(0.0).min(1.0).sum(); };
  // mass is non-increasing in tau; mass(lo) = n, mass(hi) = 0.
  double lo = v.minCoeff() - 1.0;
  double hi = v.maxCoeff();
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (mass(mid) > total ? lo : hi) = mid;
  }
  const double tau = 0.5 * (lo + hi);
  return (v.array() - tau).max(0.0).min(1.0).matrix();
}

namespace {

RelaxedDesign descend_smooth(const DesignCriterion& c, const SpectralBasis& basis, Vector d, Index m,
                             const RelaxOptions& opt) {
  RelaxedDesign out;
  out.target = m;
  double f = relaxed_objective(c, basis, d);
  double step = 1.0;
  for (int k = 1; k <= opt.max_iterations; ++k) {
    out.iterations = k;
    const Vector g = relaxed_gradient(c, basis, d);
    step = std::min(step / opt.backtrack, 1e8);
    Vector trial;
    double f_trial = kInf;
    while (true) {
      trial = project_capped_simplex(d - step * g, static_cast<double>(m));
      f_trial = relaxed_objective(c, basis, trial);
      if (f_trial <= f + opt.armijo_c * g.dot(trial - d)) break;
      step *= opt.backtrack;
      if (step < 1e-30) {
        trial = d;
        f_trial = f;
        break;
      }
    }
    const double moved = (trial - d).norm();
    d = std::move(trial);
    f = f_trial;
    if (moved <= opt.step_tolerance) {
      out.converged = true;
      break;
    }
  }
  out.weights = std::move(d);
  out.objective = f;
  return out;
}

// Projected subgradient with steps a/√k along the normalized subgradient;
// the best iterate is kept. Converged once the best value stalls for a
// full window.
RelaxedDesign descend_subgradient(const DesignCriterion& c, const SpectralBasis& basis, Vector d, Index m,
                                  const RelaxOptions& opt) {
  constexpr int kWindow = 500;
  constexpr double kStall = 1e-9;
  RelaxedDesign out;
  out.target = m;
  Vector best = d;
  double f_best = relaxed_objective(c, basis, d);
  double f_window = f_best;
  for (int k = 1; k <= opt.max_iterations; ++k) {
    out.iterations = k;
    const Vector g = relaxed_gradient(c, basis, d);
    const double gn = g.norm();
    if (gn == 0.0) {
      out.converged = true;
      break;
    }
    d = project_capped_simplex(d - (opt.subgradient_scale / std::sqrt(static_cast<double>(k))) * (g / gn),
                               static_cast<double>(m));
    const double f = relaxed_objective(c, basis, d);
    if (f < f_best) {
      f_best = f;
      best = d;
    }
    if (k % kWindow == 0) {
      if (f_window - f_best < kStall) {
        out.converged = true;
        break;
      }
      f_window = f_best;
    }
  }
  out.weights = std::move(best);
  out.objective = f_best;
  return out;
}

// Indices of the m largest weights; weights within 1e-8 count as tied and
// go to the lowest index.
std::vector<Index> top_entries(const Vector& d, Index m) {
  std::vector<Index> order(static_cast<size_t>(d.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::vector<double> key(order.size());
  for (Index i = 0; i < d.size(); ++i) key[static_cast<size_t>(i)] = std::round(d(i) * 1e8);
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return key[static_cast<size_t>(a)] > key[static_cast<size_t>(b)]; });
  order.resize(static_cast<size_t>(m));
  return order;
}

}  // namespace

RelaxedSelection relaxed_select(const DesignCriterion& criterion, const SpectralBasis& basis, Index m,
                                const RelaxOptions& options) {
  criterion.noise.validate();
  require_size(criterion.noise.order(), basis.order(), "noise model");
  const Index n = basis.order();
  if (m < 1 || m > n) {
    throw ConfigError("sample count M=" + std::to_string(m) + " must lie in [1, " + std::to_string(n) + "]");
  }
  const Vector start = Vector::Constant(n, static_cast<double>(m) / static_cast<double>(n));

  RelaxedSelection out;
  if (m == n) {
    out.design = {Vector::Ones(n), m, 0, relaxed_objective(criterion, basis, Vector::Ones(n)), true};
  } else if (criterion.kind == CriterionKind::e_optimal) {
    out.design = descend_subgradient(criterion, basis, start, m, options);
  } else {
    out.design = descend_smooth(criterion, basis, start, m, options);
  }
  out.rounded = VertexSet(n, top_entries(out.design.weights, m));
  out.rounded_objective = objective(criterion, basis, out.rounded);
  return out;
}

}  // namespace gsp
