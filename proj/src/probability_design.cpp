#include "gsp/adaptive.hpp"

#include "gsp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace gsp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Barrier problem over z = (p_A, s), A = {i : p_max_i > 0}:
//   φ_τ(z) = τ 1ᵀp − log det(G(p) − sI) − log(s − c1) − log(κs − cᵀp)
//            − Σ log p_i − Σ log(p_max_i − p_i)
// with G(p) = Σ p_i u_i u_iᵀ and c_i = r_i² ||u_i||².
class Barrier {
 public:
  Barrier(const Matrix& rows, Vector cost, Vector cap, double c1, double kappa)
      : u_(rows), c_(std::move(cost)), cap_(std::move(cap)), c1_(c1), kappa_(kappa) {}

  Index size() const { return u_.rows() + 1; }
  double barrier_terms() const { return static_cast<double>(u_.cols() + 2 + 2 * u_.rows()); }

  Matrix gram(const Vector& p) const { return u_.transpose() * p.asDiagonal() * u_; }

  /// +inf outside the strict interior.
  double value(const Vector& z, double tau) const {
    const Index a = u_.rows();
    const Vector p = z.head(a);
    const double s = z(a);
    const double h = kappa_ * s - c_.dot(p);
    if (!(s > c1_) || !(h > 0.0)) return kInf;
    if ((p.array() <= 0.0).any() || ((cap_ - p).array() <= 0.0).any()) return kInf;
    const Matrix x = gram(p) - s * Matrix::Identity(u_.cols(), u_.cols());
    Eigen::LLT<Matrix> llt(x);
    if (llt.info() != Eigen::Success) return kInf;
    const Matrix l = llt.matrixL();
    const double logdet = 2.0 * l.diagonal().array().log().sum();
    if (!std::isfinite(logdet)) return kInf;
    return tau * p.sum() - logdet - std::log(s - c1_) - std::log(h) - p.array().log().sum() -
           (cap_ - p).array().log().sum();
  }

  void derivatives(const Vector& z, double tau, Vector& grad, Matrix& hess) const {
    const Index a = u_.rows();
    const Index k = u_.cols();
    const Vector p = z.head(a);
    const double s = z(a);
    const double h = kappa_ * s - c_.dot(p);
    const Matrix w = (gram(p) - s * Matrix::Identity(k, k)).llt().solve(Matrix::Identity(k, k));
    const Matrix uw = u_ * w;                      // rows: (W u_i)ᵀ
    const Matrix m = uw * u_.transpose();          // u_iᵀ W u_j
    const Vector slack = cap_ - p;

    grad.resize(a + 1);
    hess.resize(a + 1, a + 1);
    grad.head(a) = Vector::Constant(a, tau) - m.diagonal() + c_ / h - p.cwiseInverse() + slack.cwiseInverse();
    grad(a) = w.trace() - 1.0 / (s - c1_) - kappa_ / h;

    hess.topLeftCorner(a, a) = m.cwiseAbs2() + c_ * c_.transpose() / (h * h);
    hess.topLeftCorner(a, a).diagonal() += p.cwiseAbs2().cwiseInverse() + slack.cwiseAbs2().cwiseInverse();
    const Vector cross = -uw.rowwise().squaredNorm() - c_ * (kappa_ / (h * h));
    hess.col(a).head(a) = cross;
    hess.row(a).head(a) = cross.transpose();
    hess(a, a) = (w * w).trace() + 1.0 / ((s - c1_) * (s - c1_)) + kappa_ * kappa_ / (h * h);
  }

 private:
  Matrix u_;
  Vector c_;
  Vector cap_;
  double c1_;
  double kappa_;
};

void validate_spec(const AdaptiveDesignSpec& spec, const SpectralBasis& basis) {
  if (!(spec.alpha_bar > 0.0 && spec.alpha_bar < 1.0)) throw ConfigError("alpha_bar must lie in (0, 1)");
  if (!(spec.gamma > 0.0)) throw ConfigError("gamma must be positive");
  if (!(spec.mu > 0.0)) throw ConfigError("mu must be positive");
  require_size(spec.noise.order(), basis.order(), "noise model");
  require_size(spec.p_max.size(), basis.order(), "p_max");
  spec.noise.validate();
  for (Index i = 0; i < spec.p_max.size(); ++i) {
    if (!(spec.p_max(i) >= 0.0 && spec.p_max(i) <= 1.0)) {
      throw ConfigError("p_max at vertex " + std::to_string(i + 1) + " must lie in [0, 1]");
    }
  }
}

void fill_metrics(ProbabilityDesign& d, const AdaptiveDesignSpec& spec, const SpectralBasis& basis) {
  const Matrix& uf = basis.band_vectors();
  const Matrix a = uf.transpose() * d.p.asDiagonal() * uf;
  const Matrix b = uf.transpose() * d.p.cwiseProduct(spec.noise.variances).asDiagonal() * uf;
  d.total = d.p.sum();
  d.lambda_min = linalg::symmetric_eigenvalues(a)(0);
  d.rate_floor = (1.0 - spec.alpha_bar) / (2.0 * spec.mu);
  d.trace = b.trace();
  d.mse_bound = 0.5 * spec.mu * d.trace / d.lambda_min;
  d.mse = 0.5 * spec.mu * a.llt().solve(b).trace();
  d.alpha = 1.0 - 2.0 * spec.mu * d.lambda_min;
}

}  // namespace

ProbabilityDesign design_probabilities(const AdaptiveDesignSpec& spec, const SpectralBasis& basis) {
  validate_spec(spec, basis);
  const Matrix& uf = basis.band_vectors();
  const double c1 = (1.0 - spec.alpha_bar) / (2.0 * spec.mu);
  const double kappa = 2.0 * spec.gamma / spec.mu;

  std::vector<Index> active;
  for (Index i = 0; i < basis.order(); ++i)
    if (spec.p_max(i) > 0.0) active.push_back(i);
  if (active.empty()) throw ConfigError("design_probabilities: p_max is zero everywhere");

  const Index na = static_cast<Index>(active.size());
  const Matrix rows = linalg::select_rows(uf, active);
  Vector cost(na), cap(na);
  for (Index k = 0; k < na; ++k) {
    const Index v = active[static_cast<size_t>(k)];
    cost(k) = spec.noise.variances(v) * rows.row(k).squaredNorm();
    cap(k) = spec.p_max(v);
  }
  const Barrier barrier(rows, cost, cap, c1, kappa);

  // Strict feasibility at p_max.
  const double lam_cap = linalg::symmetric_eigenvalues(barrier.gram(cap))(0);
  if (!(lam_cap > c1)) {
    throw ConfigError("design_probabilities: convergence-rate constraint infeasible at p_max (lambda_min " +
                      std::to_string(lam_cap) + " < " + std::to_string(c1) + "); raise alpha_bar or p_max");
  }
  if (!(kappa * lam_cap > cost.dot(cap))) {
    throw ConfigError("design_probabilities: MSE constraint infeasible at p_max (bound " +
                      std::to_string(0.5 * spec.mu * cost.dot(cap) / lam_cap) + " > gamma " +
                      std::to_string(spec.gamma) + "); raise gamma or lower noise");
  }

  const double shrink = 1.0 - std::min(1e-3, 0.5 * (1.0 - c1 / lam_cap));
  Vector z(na + 1);
  z.head(na) = shrink * cap;
  const double lam0 = shrink * lam_cap;
  const double lower = std::max(c1, cost.dot(z.head(na)) / kappa);
  z(na) = 0.5 * (lower + lam0);

  const double m = barrier.barrier_terms();
  double tau = m / std::max(z.head(na).sum(), 1e-12);
  constexpr double kGap = 1e-10;
  constexpr int kNewtonCap = 20000;
  int steps = 0;
  Vector grad;
  Matrix hess;
  while (true) {
    for (int inner = 0; inner < 500; ++inner) {
      if (++steps > kNewtonCap) {
        throw NumericalError("design_probabilities: barrier method did not converge", m / tau);
      }
      barrier.derivatives(z, tau, grad, hess);
      const Vector dz = -hess.ldlt().solve(grad);
      const double decrement = -grad.dot(dz);
      if (!(decrement > 2e-14)) break;
      const double f0 = barrier.value(z, tau);
      double t = 1.0;
      double ft = barrier.value(z + t * dz, tau);
      while (!(ft <= f0 - 0.25 * t * decrement) && t > 1e-20) {
        t *= 0.5;
        ft = barrier.value(z + t * dz, tau);
      }
      if (!(ft < kInf) || t <= 1e-20) break;
      z += t * dz;
    }
    if (m / tau < kGap) break;
    tau *= 8.0;
  }

  ProbabilityDesign out;
  out.newton_steps = steps;
  out.p = Vector::Zero(basis.order());
  const double floor = 1e-9 * cap.maxCoeff();
  for (Index k = 0; k < na; ++k) {
    const double pk = z(k);
    out.p(active[static_cast<size_t>(k)]) = pk < floor ? 0.0 : pk;
  }
  fill_metrics(out, spec, basis);

  constexpr double kFeasTol = 1e-6;
  if (out.lambda_min < c1 - kFeasTol || out.trace > kappa * out.lambda_min + kFeasTol) {
    throw NumericalError("design_probabilities: solution violates a constraint",
                         std::max(c1 - out.lambda_min, out.trace - kappa * out.lambda_min));
  }
  if (out.mse > out.mse_bound * (1.0 + 1e-12)) {
    throw NumericalError("design_probabilities: MSE exceeds its bound", out.mse - out.mse_bound);
  }
  return out;
}

}  // namespace gsp
