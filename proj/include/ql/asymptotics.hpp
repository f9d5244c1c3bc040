// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ql/conserved_quantities.hpp"
#include "ql/optimal_embedding.hpp"

namespace ql {

/// Leading expansion coefficients of the surface data over a radius sweep.
struct SurfaceExpansion {
  GridPtr grid;
  std::vector<Real> radii;
  SymTensorField sigma1, sigma0;
  ScalarField h_m2, h_m3;
  CovectorField alpha_m1, alpha_m2;
  Real fit_rel_rms = 0.0;  // worst relative fit residual across the fields
};

SurfaceExpansion extract_expansions(const SpacetimeModel& model, Real t,
                                    const std::vector<Real>& radii, const GridPtr& grid);

struct FinitenessMoments {
  Vec3 rho_moment = Vec3::Zero();
  Vec3 curl_moment = Vec3::Zero();
  Real sup() const {
    return std::max(rho_moment.cwiseAbs().maxCoeff(), curl_moment.cwiseAbs().maxCoeff());
  }
};

/// First moments whose vanishing makes the total quantities finite.
FinitenessMoments finiteness_moments(const SurfaceExpansion& exp);
FinitenessMoments finiteness_moments(const ScalarField& rho_m2, const CovectorField& alpha_m1);

/// Third-order curvature coefficient of a metric round + sigma1 / r.
ScalarField k_minus3(const SymTensorField& sigma1);

struct HhatMoments {
  Vec3 direct = Vec3::Zero();   // moment of the extracted subleading mean curvature
  Vec3 via_k3 = Vec3::Zero();   // moment through the curvature-coefficient route
};

HhatMoments hhat_moment_check(const SpacetimeModel& model, Real t,
                              const std::vector<Real>& radii, const GridPtr& grid);

struct TotalOptions {
  OptimalOptions optimal;
  std::vector<Real> extrapolation_powers = {0.0, -1.0, -2.0};
  Real moment_tol = 1e-6;  // finiteness gate
};

struct TotalQuantities {
  Vec3 C = Vec3::Zero();
  Vec3 J = Vec3::Zero();
  AdmQuantities adm;
  bool finite_ok = false;
  bool degenerate = false;  // flat data; quantities reported as zero
  FinitenessMoments moments;
  Real extrapolation_error = 0.0;
  std::vector<Real> radii;
  std::vector<Vec3> e_boost, e_rot;     // per-radius evaluations
  std::vector<Real> solver_residual, solver_tol;
  std::vector<Real> isometry_residual;
};

TotalQuantities total_quantities(const SpacetimeModel& model, Real t,
                                 const std::vector<Real>& radii, const GridPtr& grid,
                                 const TotalOptions& opts = {});

struct KerrProfileResult {
  std::string name;
  Real j3_extrapolated = 0.0;
  std::vector<Real> j3_per_radius;
  std::vector<Real> deviation_from_baseline;
};

struct KerrInvarianceReport {
  std::vector<Real> radii;
  std::vector<KerrProfileResult> profiles;
  Real baseline_j3 = 0.0;
  Real komar = 0.0;
  Real max_rel_deviation = 0.0;  // of extrapolated J3 across profiles
  Real deviation_decay_slope = 0.0;  // per-radius deviation fit for the Y20 profile
};

/// Angular momentum of Kerr slices t = f(r, u) for several profiles f = o(r).
KerrInvarianceReport kerr_invariance_experiment(Real m, Real a, const std::vector<Real>& radii,
                                                const GridPtr& grid,
                                                const TotalOptions& opts = {});

struct EvolutionReport {
  Vec3 dC_dt = Vec3::Zero();
  Vec3 dJ_dt = Vec3::Zero();
  Vec3 p_over_e = Vec3::Zero();
  Vec3 h_m3_moment_rate = Vec3::Zero();   // expected -p
  Vec3 h0_m3_moment_rate = Vec3::Zero();  // expected 0
  TotalQuantities center;                 // quantities at the central time
};

/// Central finite differences in time of the total quantities on an exact
/// analytic family, plus the intermediate moment identities.
EvolutionReport evolution_identities(const SpacetimeModel& model, Real t0, Real dt,
                                     const std::vector<Real>& radii, const GridPtr& grid,
                                     const TotalOptions& opts = {});

struct SlowDecayReport {
  std::vector<Real> radii;
  std::vector<Real> h_integral, j_integral;  // sup over components per radius
  Real h_power = 0.0, j_power = 0.0;         // fitted log-log slopes
  bool at_most_logarithmic = false;
};

/// Growth check of the first-moment integrals on slowly decaying data.
SlowDecayReport slow_decay_growth_check(const SpacetimeModel& model,
                                        const std::vector<Real>& radii, const GridPtr& grid,
                                        const TotalOptions& opts = {});

}  // namespace ql
