// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "ql/surface_geometry.hpp"

namespace ql {

Embedding31 Embedding31::round_sphere(const GridPtr& g, Real radius, const Observer& obs) {
  Embedding31 e;
  e.grid = g;
  e.x[0] = Array::Zero(g->size());
  for (int i = 0; i < 3; ++i) e.x[1 + i] = radius * g->xhat(i);
  e.t0 = obs;
  return e;
}

Embedding31 Embedding31::transformed(const Mat4& lorentz, const Vec4& shift) const {
  Embedding31 out;
  out.grid = grid;
  out.isometry_residual = isometry_residual;
  const int n = grid->size();
  for (int mu = 0; mu < 4; ++mu) {
    out.x[mu] = Array::Constant(n, shift[mu]);
    for (int nu = 0; nu < 4; ++nu) out.x[mu] += lorentz(mu, nu) * x[nu];
  }
  out.t0 = Observer(lorentz * t0.t0);
  return out;
}

ScalarField tau_field(const Embedding31& emb) {
  const Vec4& t = emb.t0.t0;
  Array v = t[0] * emb.x[0];
  for (int i = 1; i < 4; ++i) v -= t[i] * emb.x[i];
  return {emb.grid, v};
}

SymTensorField induced_metric(const Embedding31& emb) {
  SymTensorField s = SymTensorField::zero(emb.grid);
  for (int mu = 0; mu < 4; ++mu) {
    const Real sign = (mu == 0) ? -1.0 : 1.0;
    const auto j = scalar_jet1({emb.grid, emb.x[mu]});
    s.tt += sign * j.dt * j.dt;
    s.tp += sign * j.dt * j.dp;
    s.pp += sign * j.dp * j.dp;
  }
  return s;
}

namespace {

struct TauDerived {
  ScalarField lap;       // Laplace-Beltrami of tau in sigma
  CovectorField grad;    // d tau
  Array grad2;           // |grad tau|^2
};

TauDerived tau_derived(const ScalarField& tau, const SymTensorField& sigma) {
  TauDerived d;
  d.lap = laplace_beltrami(sigma, tau);
  d.grad = gradient(tau);
  d.grad2 = inner(invert_metric(sigma), d.grad, d.grad);
  return d;
}

}  // namespace

ScalarField theta_field(const ScalarField& tau, const SymTensorField& sigma,
                        const ScalarField& hnorm) {
  if (hnorm.v.minCoeff() <= 0.0) throw numerical_error("theta_field: |H| must be positive");
  const auto d = tau_derived(tau, sigma);
  const Array arg = -d.lap.v / (hnorm.v * (1.0 + d.grad2).sqrt());
  return {tau.grid, arg.unaryExpr([](Real x) { return std::asinh(x); })};
}

ScalarField rho_field(const ScalarField& tau, const SymTensorField& sigma,
                      const ScalarField& hnorm, const ScalarField& h0norm) {
  if (hnorm.v.minCoeff() <= 0.0 || h0norm.v.minCoeff() <= 0.0) {
    throw numerical_error("rho_field: mean curvature norms must be positive");
  }
  const auto d = tau_derived(tau, sigma);
  const Array one = 1.0 + d.grad2;
  const Array common = d.lap.v.square() / one;
  const Array rho =
      ((h0norm.v.square() + common).sqrt() - (hnorm.v.square() + common).sqrt()) / one.sqrt();
  return {tau.grid, rho};
}

namespace {

// shared assembly of rho, the asinh potential and its gradient
struct JPieces {
  Array rho;
  ScalarField pot;  // asinh(rho lap / (|H0||H|))
  TauDerived tau;
};

JPieces j_pieces(const ScalarField& tau, const SymTensorField& sigma, const ScalarField& hnorm,
                 const ScalarField& h0norm) {
  JPieces p;
  p.tau = tau_derived(tau, sigma);
  const Array one = 1.0 + p.tau.grad2;
  const Array common = p.tau.lap.v.square() / one;
  p.rho = ((h0norm.v.square() + common).sqrt() - (hnorm.v.square() + common).sqrt()) /
          one.sqrt();
  const Array arg = p.rho * p.tau.lap.v / (h0norm.v * hnorm.v);
  p.pot = ScalarField{tau.grid, arg.unaryExpr([](Real x) { return std::asinh(x); })};
  return p;
}

}  // namespace

CovectorField j_covector(const ScalarField& tau, const SymTensorField& sigma,
                         const ScalarField& hnorm, const CovectorField& alphaH,
                         const ScalarField& h0norm, const CovectorField& alphaH0) {
  const auto p = j_pieces(tau, sigma, hnorm, h0norm);
  const auto dpot = gradient(p.pot);
  return {tau.grid, p.rho * p.tau.grad.th - dpot.th - alphaH0.th + alphaH.th,
          p.rho * p.tau.grad.ph - dpot.ph - alphaH0.ph + alphaH.ph};
}

ScalarField optimal_residual(const ScalarField& tau, const SymTensorField& sigma,
                             const ScalarField& hnorm, const CovectorField& alphaH,
                             const ScalarField& h0norm, const CovectorField& alphaH0) {
  return divergence(sigma, j_covector(tau, sigma, hnorm, alphaH, h0norm, alphaH0));
}

ReferenceData reference_data_from_embedding(const Embedding31& emb, SurfaceBuild* full) {
  const auto& grid = emb.grid;
  const int n = grid->size();

  SurfaceChart chart;
  chart.grid = grid;
  std::array<ScalarJet, 4> xj;
  Vec4 center = Vec4::Zero();
  for (int mu = 0; mu < 4; ++mu) {
    xj[mu] = scalar_jet({grid, emb.x[mu]});
    chart.q[mu] = emb.x[mu];
    chart.e_th[mu] = xj[mu].dt;
    chart.e_ph[mu] = xj[mu].dp;
    chart.de_tt[mu] = xj[mu].dtt;
    chart.de_tp[mu] = xj[mu].dtp;
    chart.de_pp[mu] = xj[mu].dpp;
    chart.v_time[mu] = Array::Constant(n, emb.t0.t0[mu]);
    center[mu] = integrate(*grid, emb.x[mu]) / kFourPi;
  }
  for (int mu = 0; mu < 4; ++mu) {
    chart.v_radial[mu] = emb.x[mu] - center[mu];
  }
  // keep the radial seed spacelike: remove its observer component
  {
    Array proj = Array::Zero(n);
    const Vec4& t = emb.t0.t0;
    proj = -t[0] * chart.v_radial[0];
    for (int i = 1; i < 4; ++i) proj += t[i] * chart.v_radial[i];
    // proj = <v, t0>; subtract its t0 part: v -> v + <v,t0> t0
    for (int mu = 0; mu < 4; ++mu) chart.v_radial[mu] += proj * t[mu];
  }

  SurfaceBuild build = build_surface_flat(chart);
  if (full) *full = build;

  ReferenceData out;
  out.H0norm = build.data.Hnorm;
  out.alphaH0 = build.data.alphaH;

  // projected surface in the hyperplane orthogonal to the observer
  const auto tau = tau_field(emb);
  const Vec4& t = emb.t0.t0;
  SurfaceChart hat;
  hat.grid = grid;
  std::array<ScalarJet, 4> hj;
  for (int mu = 0; mu < 4; ++mu) {
    const Array xhat_mu = emb.x[mu] - tau.v * t[mu];
    hj[mu] = scalar_jet({grid, xhat_mu});
    hat.q[mu] = xhat_mu;
    hat.e_th[mu] = hj[mu].dt;
    hat.e_ph[mu] = hj[mu].dp;
    hat.de_tt[mu] = hj[mu].dtt;
    hat.de_tp[mu] = hj[mu].dtp;
    hat.de_pp[mu] = hj[mu].dpp;
    hat.v_time[mu] = Array::Constant(n, t[mu]);
    hat.v_radial[mu] = xhat_mu - (center[mu] + minkowski_dot(center, t) * t[mu]);
  }
  SurfaceBuild hb = build_surface_flat(hat);

  out.sigma_hat = hb.data.sigma;
  out.Hhat = {grid, hb.hhat};
  // second fundamental form against the outward in-plane normal e3
  SymTensorField h2 = SymTensorField::zero(grid);
  for (int node = 0; node < n; ++node) {
    Vec4 e3, wtt, wtp, wpp;
    for (int mu = 0; mu < 4; ++mu) {
      e3[mu] = hb.e3[mu][node];
      wtt[mu] = hj[mu].dtt[node];
      wtp[mu] = hj[mu].dtp[node];
      wpp[mu] = hj[mu].dpp[node];
    }
    h2.tt[node] = -minkowski_dot(wtt, e3);
    h2.tp[node] = -minkowski_dot(wtp, e3);
    h2.pp[node] = -minkowski_dot(wpp, e3);
  }
  out.hhat_ab = h2;
  return out;
}

Real quasilocal_energy(const SurfaceData& data, const Embedding31& emb) {
  const auto ref = reference_data_from_embedding(emb);
  const auto tau = tau_field(emb);
  const auto p = j_pieces(tau, data.sigma, data.Hnorm, ref.H0norm);
  const auto inv = invert_metric(data.sigma);
  const Array alpha_term =
      inner(inv, data.alphaH, p.tau.grad) - inner(inv, ref.alphaH0, p.tau.grad);
  const Array integrand =
      p.rho * (1.0 + p.tau.grad2) + p.tau.lap.v * p.pot.v + alpha_term;
  return integrate(data.sigma, integrand) / (8.0 * kPi);
}

ScalarField optimal_residual(const SurfaceData& data, const Embedding31& emb) {
  const auto ref = reference_data_from_embedding(emb);
  const auto tau = tau_field(emb);
  return optimal_residual(tau, data.sigma, data.Hnorm, data.alphaH, ref.H0norm, ref.alphaH0);
}

}  // namespace ql
