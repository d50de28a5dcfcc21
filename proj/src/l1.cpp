#include "gsp/recovery.hpp"

#include <algorithm>
#include <cmath>

namespace gsp {

// Split: min ||z||₁ s.t. U_F s − z = y. With U_Fᵀ U_F = I the s-update is a
// plain projection, so each iteration costs two n×|F| products.
RecoveryReport l1_reconstruct(const SpectralBasis& basis, const Vector& y, const L1Options& opt) {
  require_size(y.size(), basis.order(), "l1_reconstruct observation");
  if (!(opt.rho > 0.0) || !(opt.relaxation > 0.0 && opt.relaxation < 2.0)) {
    throw ConfigError("l1_reconstruct: need rho > 0 and relaxation in (0, 2)");
  }
  const Matrix& uf = basis.band_vectors();
  const double n = static_cast<double>(y.size());
  const double k = static_cast<double>(uf.cols());
  const double kappa = 1.0 / opt.rho;

  Vector s = Vector::Zero(uf.cols());
  Vector z = Vector::Zero(y.size());
  Vector u = Vector::Zero(y.size());
  RecoveryReport out;
  out.method = RecoveryMethod::l1;
  out.converged = false;

  for (int it = 1; it <= opt.max_iterations; ++it) {
    out.iterations = it;
    s = uf.transpose() * (y + z - u);
    const Vector us = uf * s;
    const Vector relaxed = opt.relaxation * us + (1.0 - opt.relaxation) * (z + y);
    const Vector z_old = z;
    const Vector v = relaxed - y + u;
    z = (v.array().abs() - kappa).max(0.0) * v.array().sign();
    u += relaxed - z - y;

    const double primal = (us - z - y).norm();
    const double dual = opt.rho * (uf.transpose() * (z - z_old)).norm();
    const double eps_primal = std::sqrt(n) * opt.tolerance + opt.tolerance * std::max({us.norm(), z.norm(), y.norm()});
    const double eps_dual = std::sqrt(k) * opt.tolerance + opt.tolerance * opt.rho * (uf.transpose() * u).norm();
    if (primal <= eps_primal && dual <= eps_dual) {
      out.converged = true;
      break;
    }
  }
  out.s_hat = std::move(s);
  out.x_hat = uf * out.s_hat;
  out.condition = 1.0;  // every vertex observed
  return out;
}

double coherence(const SpectralBasis& basis) { return basis.band_vectors().cwiseAbs().maxCoeff(); }

double l1_recovery_bound(const SpectralBasis& basis) {
  const double mu = coherence(basis);
  return 1.0 / (2.0 * mu * mu * static_cast<double>(basis.bandwidth()));
}

}  // namespace gsp
