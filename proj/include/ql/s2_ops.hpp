// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <functional>
#include <utility>

#include "ql/s2_fields.hpp"

namespace ql {

/// Spectral Laplacian of the round unit-sphere metric.
ScalarField laplacian_round(const ScalarField& f);

/// Gradient one-form of f with respect to the round metric (plain d f).
CovectorField gradient(const ScalarField& f);

/// Inverts the round Laplacian on the mean-free part; the mean of the result
/// is zero.
ScalarField inv_laplacian_round(const ScalarField& f);

/// Keeps only the degrees l with keep(l) true.
ScalarField filter_degrees(const ScalarField& f, const std::function<bool(int)>& keep);

struct HelmholtzResult {
  ScalarField u;      // solves (lap + 2) u = rhs minus its l=1 part, u has no l=1
  Vec3 l1_projection; // moments of rhs against the three coordinate functions
};

/// Solves (lap + 2) u = rhs on the orthogonal complement of the l=1 kernel.
HelmholtzResult solve_helmholtz_plus2(const ScalarField& rhs);

/// Plain partial derivatives of a band-limited scalar through degree two.
struct ScalarJet {
  Array v, dt, dp, dtt, dtp, dpp;
};

ScalarJet scalar_jet(const ScalarField& f);
/// First-order jet only (cheaper).
ScalarJet scalar_jet1(const ScalarField& f);

}  // namespace ql
