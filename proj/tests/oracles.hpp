// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include "ql/initial_data.hpp"
#include "ql/spacetimes.hpp"

namespace ql::testing {

/// Fourth-order central finite difference of a scalar function of one chart
/// coordinate; independent route against the hand-coded analytic jets.
template <typename F>
Real fd_derivative(const F& f, Real h) {
  return (f(-2.0 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2.0 * h)) / (12.0 * h);
}

/// Worst error of the analytic first and second metric derivatives at q
/// against finite differences of the metric values.
struct JetCheck {
  Real first = 0.0;
  Real second = 0.0;
};

inline JetCheck check_metric_jet(const SpacetimeModel& model, const Vec4& q, Real h = 1e-3) {
  const auto jet = metric4_jet(model, q, 2);
  JetCheck out;
  for (int mu = 0; mu < 4; ++mu) {
    for (int i = 0; i < 4; ++i) {
      for (int j = i; j < 4; ++j) {
        auto g_of = [&](Real eps) {
          Vec4 qq = q;
          qq[mu] += eps;
          return metric4(model, qq)(i, j);
        };
        const Real fd = fd_derivative(g_of, h);
        out.first = std::max(out.first, std::abs(fd - jet.dg[mu](i, j)));
      }
    }
    for (int nu = 0; nu < 4; ++nu) {
      for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
          auto dg_of = [&](Real eps) {
            Vec4 qq = q;
            qq[nu] += eps;
            return metric4_jet(model, qq, 1).dg[mu](i, j);
          };
          const Real fd = fd_derivative(dg_of, h);
          out.second = std::max(out.second, std::abs(fd - jet.ddg[nu][mu](i, j)));
        }
      }
    }
  }
  return out;
}

/// Closed-form mean curvature of the isotropic coordinate sphere of radius r
/// for a Schwarzschild slice of mass m (time-symmetric, so |H| = hhat).
inline Real schwarzschild_isotropic_sphere_hnorm(Real m, Real r) {
  const Real u = 1.0 + 0.5 * m / r;
  return 2.0 * (1.0 - 0.5 * m / r) / (r * u * u * u);
}

/// Same in areal (standard) coordinates.
inline Real schwarzschild_areal_sphere_hnorm(Real m, Real r) {
  return 2.0 * std::sqrt(1.0 - 2.0 * m / r) / r;
}

}  // namespace ql::testing
