// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include "ql/s2_metric_ops.hpp"

namespace ql {

/// Solution of the linearized isometric-embedding system on the round sphere.
struct LinearizedSolution {
  std::array<ScalarField, 3> y;  // first-order corrections to the embedding
  CovectorField p;
  ScalarField f;
  Real curl_residual = 0.0;   // integrability of the reconstructed gradient
  Real iso_residual = 0.0;    // sup of 2 sum dX.dY - sigma1
  Vec3 l1_solvability = Vec3::Zero();
};

/// Solves 2 sum_i dX~^i . dY^i = sigma1 through the elliptic (P, F) system,
/// fixing the rigid-motion ambiguity by zero mean and zero antisymmetric
/// first moments of Y.
LinearizedSolution solve_linearized(const SymTensorField& sigma1);

/// Leading correction of the reference mean curvature for a metric
/// r^2 round + r sigma1: -X~ . lap Y - tr sigma1.
ScalarField h0_minus2(const SymTensorField& sigma1);
ScalarField h0_minus2(const LinearizedSolution& sol, const SymTensorField& sigma1);

enum class GaugeTarget {
  kCanonical,  // zero means and antisymmetric moments on return
  kFromInit,   // keep the rigid-motion gauge of the initial guess
};

struct EmbedOptions {
  Real tol_rel = 1e-12;  // residual tolerance relative to the metric scale
  int max_iter = 60;
  bool check_curvature = true;
  GaugeTarget gauge = GaugeTarget::kCanonical;
  bool trace = false;  // iteration log on stderr
};

struct EmbedResult {
  std::array<ScalarField, 3> x;
  Real residual = 0.0;       // sup isometry defect in orthonormal components
  Real scale = 1.0;          // metric scale the residual is measured against
  int iterations = 0;
};

/// Isometric embedding of a positive-curvature near-round metric into
/// Euclidean 3-space by damped quasi-Newton iteration on the harmonic
/// coefficients, gauge-fixed like solve_linearized.
EmbedResult embed_r3_newton(const SymTensorField& sigma,
                            const std::array<ScalarField, 3>& x_init,
                            const EmbedOptions& opts = {});

/// Round-sphere initial guess of radius r.
std::array<ScalarField, 3> round_embedding(const GridPtr& grid, Real r);

/// Mean curvature of an isometric image in Euclidean space, h = |lap_sigma X|.
ScalarField mean_curvature_r3(const std::array<ScalarField, 3>& x,
                              const SymTensorField& sigma);

}  // namespace ql
