// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "ql/s2_ops.hpp"

#include <functional>

namespace ql {

namespace {

// applies a per-degree factor to packed coefficients
Coeffs scale_by_degree(const Coeffs& a, const std::function<Real(int)>& factor) {
  Coeffs out = a;
  const int lmax = a.lmax;
  for (int l = 0; l <= lmax; ++l) {
    out.c[Coeffs::index_m0(l)] *= factor(l);
  }
  for (int m = 1; m <= lmax; ++m) {
    for (int l = m; l <= lmax; ++l) {
      out.c[Coeffs::index_cos(l, m, lmax)] *= factor(l);
      out.c[Coeffs::index_sin(l, m, lmax)] *= factor(l);
    }
  }
  return out;
}

}  // namespace

ScalarField laplacian_round(const ScalarField& f) {
  const auto a = f.grid->analyze(f.v);
  const auto b = scale_by_degree(a, [](int l) { return -Real(l) * (l + 1); });
  return {f.grid, f.grid->synthesize(b)};
}

CovectorField gradient(const ScalarField& f) {
  const auto a = f.grid->analyze(f.v);
  return {f.grid, f.grid->synth_dtheta(a), f.grid->synth_dphi(a)};
}

ScalarField inv_laplacian_round(const ScalarField& f) {
  const auto a = f.grid->analyze(f.v);
  const auto b =
      scale_by_degree(a, [](int l) { return l == 0 ? 0.0 : -1.0 / (Real(l) * (l + 1)); });
  return {f.grid, f.grid->synthesize(b)};
}

ScalarField filter_degrees(const ScalarField& f, const std::function<bool(int)>& keep) {
  const auto a = f.grid->analyze(f.v);
  const auto b = scale_by_degree(a, [&](int l) { return keep(l) ? 1.0 : 0.0; });
  return {f.grid, f.grid->synthesize(b)};
}

HelmholtzResult solve_helmholtz_plus2(const ScalarField& rhs) {
  const auto& grid = *rhs.grid;
  HelmholtzResult res;
  for (int i = 0; i < 3; ++i) {
    res.l1_projection[i] = integrate(grid, grid.xhat(i) * rhs.v);
  }
  const auto a = rhs.grid->analyze(rhs.v);
  const auto b = scale_by_degree(
      a, [](int l) { return l == 1 ? 0.0 : 1.0 / (2.0 - Real(l) * (l + 1)); });
  res.u = {rhs.grid, rhs.grid->synthesize(b)};
  return res;
}

ScalarJet scalar_jet(const ScalarField& f) {
  const auto a = f.grid->analyze(f.v);
  ScalarJet j;
  j.v = f.grid->synthesize(a);
  j.dt = f.grid->synth_dtheta(a);
  j.dp = f.grid->synth_dphi(a);
  j.dtt = f.grid->synth_d2theta(a);
  j.dtp = f.grid->synth_dtheta_dphi(a);
  j.dpp = f.grid->synth_d2phi(a);
  return j;
}

ScalarJet scalar_jet1(const ScalarField& f) {
  const auto a = f.grid->analyze(f.v);
  ScalarJet j;
  j.v = f.grid->synthesize(a);
  j.dt = f.grid->synth_dtheta(a);
  j.dp = f.grid->synth_dphi(a);
  return j;
}

}  // namespace ql
