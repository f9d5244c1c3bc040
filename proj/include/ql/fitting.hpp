// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <vector>

#include "ql/types.hpp"

namespace ql {

/// Least-squares fit of samples y(r) to sum_k c_k r^(powers[k]).
/// Rows of y are samples (one per radius), columns are independent targets.
/// Returns the coefficient matrix (n_powers x n_targets) and optionally the
/// rms residual per target.
inline Eigen::MatrixXd fit_powers(const std::vector<Real>& radii,
                                  const Eigen::MatrixXd& y, const std::vector<Real>& powers,
                                  Eigen::VectorXd* rms_residual = nullptr) {
  const int nr = static_cast<int>(radii.size());
  const int np = static_cast<int>(powers.size());
  Eigen::MatrixXd a(nr, np);
  for (int i = 0; i < nr; ++i) {
    for (int k = 0; k < np; ++k) a(i, k) = std::pow(radii[i], powers[k]);
  }
  // column scaling keeps the Vandermonde-like system well conditioned
  Eigen::VectorXd scale(np);
  for (int k = 0; k < np; ++k) scale[k] = a.col(k).norm();
  for (int k = 0; k < np; ++k) a.col(k) /= scale[k];
  const Eigen::MatrixXd coef_scaled = a.colPivHouseholderQr().solve(y);
  if (rms_residual) {
    const Eigen::MatrixXd res = a * coef_scaled - y;
    *rms_residual = res.colwise().norm() / std::sqrt(Real(nr));
  }
  Eigen::MatrixXd coef = coef_scaled;
  for (int k = 0; k < np; ++k) coef.row(k) /= scale[k];
  return coef;
}

/// Slope of log|y| against log r (decay exponent). Ignores zero samples.
inline Real fit_log_slope(const std::vector<Real>& radii, const std::vector<Real>& values) {
  std::vector<Real> lx, ly;
  for (size_t i = 0; i < radii.size(); ++i) {
    if (std::abs(values[i]) > 0.0) {
      lx.push_back(std::log(radii[i]));
      ly.push_back(std::log(std::abs(values[i])));
    }
  }
  if (lx.size() < 2) return 0.0;
  Real mx = 0, my = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= lx.size();
  my /= ly.size();
  Real num = 0, den = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  return num / den;
}

/// Log-spaced radii from lo to hi inclusive.
inline std::vector<Real> log_spaced(Real lo, Real hi, int count) {
  std::vector<Real> out(count);
  for (int i = 0; i < count; ++i) {
    out[i] = lo * std::pow(hi / lo, Real(i) / (count - 1));
  }
  return out;
}

}  // namespace ql
