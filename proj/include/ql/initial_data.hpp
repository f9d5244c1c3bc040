// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <vector>

#include "ql/s2_metric_ops.hpp"
#include "ql/spacetimes.hpp"

namespace ql {

/// 3+1 data in the model's natural chart at chart point q = (t, xi).
/// k follows the evolution convention  dt g_ij = -2 N k_ij + (Lie_shift g)_ij.
struct ChartData {
  Mat3 g;
  Mat3 k;
  std::array<Mat3, 3> dg;
  Real lapse = 1.0;
  Vec3 shift_cov = Vec3::Zero();
  // order-2 extras
  std::array<Mat3, 3> dk;
  std::array<std::array<Mat3, 3>, 3> ddg;
  bool has_second = false;
};

ChartData chart_data(const SpacetimeModel& model, const Vec4& q, int order = 1);

/// Initial data in the Cartesian frame at a Cartesian point (any model).
struct InitialDataSample {
  Mat3 g;
  Mat3 k;
  std::array<Mat3, 3> dg;
};

InitialDataSample sample_initial_data(const SpacetimeModel& model, Real t, const Vec3& p);

/// pi = k - (tr_g k) g.
Mat3 conjugate_momentum(const Mat3& g, const Mat3& k);

struct ConstraintResidual {
  Real hamiltonian = 0.0;
  Vec3 momentum = Vec3::Zero();  // chart covector components
  Real momentum_norm = 0.0;      // g-norm of the momentum residual
};

/// Vacuum constraint residuals from exact second derivatives.
ConstraintResidual constraint_residual(const SpacetimeModel& model, Real t, const Vec3& p);

/// Decay checks of the truncated divergence identities for the conjugate
/// momentum in spherical coordinates, on a log-spaced radius sweep.
struct DivergenceCheckResult {
  Real radial_exponent = 0.0;    // fitted slope of the radial-identity error
  Real angular_exponent = 0.0;   // fitted slope of the angular-identity error
  Real exact_divergence_sup = 0.0;  // largest |full divergence| seen (vacuum: ~0)
  Real pi_identity_sup = 0.0;    // sup | pi_ar^(-1) - round-div pi^(0)_ab |
  std::vector<Real> radii;
  std::vector<Real> radial_error, angular_error;
};

DivergenceCheckResult constraint_divergence_check(const SpacetimeModel& model,
                                                  const std::vector<Real>& radii,
                                                  const GridPtr& grid);

}  // namespace ql
