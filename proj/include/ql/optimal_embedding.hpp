// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include "ql/isometric_embedding.hpp"
#include "ql/surface_geometry.hpp"

namespace ql {

/// Leading spatial-infinity solution of the optimal embedding equation.
struct LeadingOrderSolution {
  ScalarField x0_0;   // order-one coefficient of the time component
  Vec4 a;             // observer direction, unit timelike
  ScalarField rho_m2;
  ScalarField tau_1;
  Real l1_residual = 0.0;        // solvability defect after fitting a
  Real equation_residual = 0.0;  // L2 residual of the leading equation
};

LeadingOrderSolution solve_leading_order(const ScalarField& h_m2, const ScalarField& h0_m2,
                                         const CovectorField& alpha_m1);

struct AdmQuantities {
  Real e = 0.0;
  Vec3 p = Vec3::Zero();
  Real m = 0.0;
  bool degenerate = false;  // vanishing-energy data (flat-space limit)
};

AdmQuantities adm_from_leading(const LeadingOrderSolution& sol, const ScalarField& h_m2,
                               const ScalarField& h0_m2, const CovectorField& alpha_m1);

/// Builds the embedding with time function tau and observer t0, the spatial
/// part being the gauge-preserving isometric embedding of sigma + dtau dtau
/// started from xhat_init.
Embedding31 assemble_embedding(const ScalarField& tau, const std::array<ScalarField, 3>& xhat,
                               const Observer& t0);

struct OptimalOptions {
  Real tol_factor = 1e-8;  // residual threshold is tol_factor * scale / r^3
  int max_outer = 50;
  Real embed_tol = 1e-12;
  int w_band = 0;  // cap on updated time-component degrees; 0 means lmax/2
  bool trace = false;
};

struct OptimalResult {
  Embedding31 emb;
  Real residual = 0.0;  // sup |div j| at return
  Real tol = 0.0;
  Real energy = 0.0;
  Real energy_init = 0.0;
  bool energy_decreased = false;
  int iterations = 0;
};

/// Finite-radius corrector: alternates re-embedding of sigma + dtau dtau with
/// preconditioned updates of tau and the observer until div j is small.
OptimalResult solve_optimal_finite_r(const SurfaceData& data, const Embedding31& init,
                                     const OptimalOptions& opts = {});

}  // namespace ql
