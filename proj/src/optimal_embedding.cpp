// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "ql/optimal_embedding.hpp"

#include <iostream>

namespace ql {

LeadingOrderSolution solve_leading_order(const ScalarField& h_m2, const ScalarField& h0_m2,
                                         const CovectorField& alpha_m1) {
  const auto& grid = h_m2.grid;
  const auto round = SymTensorField::round(grid);

  const Real e = integrate(*grid, h0_m2.v - h_m2.v) / (8.0 * kPi);
  if (e <= 1e-12) {
    throw numerical_error("solve_leading_order: vanishing total energy, direction undefined");
  }
  const auto div_alpha = divergence(round, alpha_m1);
  Vec3 p_hat;
  for (int k = 0; k < 3; ++k) {
    p_hat[k] = integrate(*grid, grid->xhat(k) * div_alpha.v) / (8.0 * kPi);
  }
  const Real m2 = e * e - p_hat.squaredNorm();
  if (m2 <= 0.0) {
    throw numerical_error("solve_leading_order: momentum is not subluminal (|p| >= e)");
  }
  const Real m = std::sqrt(m2);

  LeadingOrderSolution sol;
  // l = 1 solvability of the leading equation fixes the direction
  sol.a[0] = e / m;
  for (int k = 0; k < 3; ++k) sol.a[1 + k] = -p_hat[k] / m;

  Array tau1 = Array::Zero(grid->size());
  for (int k = 0; k < 3; ++k) tau1 -= sol.a[1 + k] * grid->xhat(k);
  sol.tau_1 = {grid, tau1};
  sol.rho_m2 = {grid, (h0_m2.v - h_m2.v) / sol.a[0]};

  // rhs of (1/2) lap (lap + 2) X0 = div(rho grad tau1) - 1/4 lap(rho lap tau1) + div alpha
  const auto grad_tau1 = gradient(sol.tau_1);
  const auto div_rho_grad =
      divergence(round, {grid, sol.rho_m2.v * grad_tau1.th, sol.rho_m2.v * grad_tau1.ph});
  const auto lap_tau1 = laplacian_round(sol.tau_1);
  const ScalarField prod{grid, sol.rho_m2.v * lap_tau1.v};
  const Array rhs = div_rho_grad.v - 0.25 * laplacian_round(prod).v + div_alpha.v;

  // invert spectrally: coefficient factor 2 / (l(l+1)(l(l+1)-2)) for l >= 2
  const auto coeffs = grid->analyze(rhs);
  Coeffs sol_coeffs = coeffs;
  Real l1 = 0.0;
  const int lmax = grid->lmax();
  auto scale_index = [&](int idx, int l) {
    if (l <= 1) {
      l1 = std::max(l1, std::abs(coeffs.c[idx]));
      sol_coeffs.c[idx] = 0.0;
    } else {
      const Real lam = Real(l) * (l + 1);
      sol_coeffs.c[idx] = 2.0 * coeffs.c[idx] / (lam * (lam - 2.0));
    }
  };
  for (int l = 0; l <= lmax; ++l) scale_index(Coeffs::index_m0(l), l);
  for (int mm = 1; mm <= lmax; ++mm) {
    for (int l = mm; l <= lmax; ++l) {
      scale_index(Coeffs::index_cos(l, mm, lmax), l);
      scale_index(Coeffs::index_sin(l, mm, lmax), l);
    }
  }
  sol.l1_residual = l1;
  const Real rhs_scale = std::sqrt((rhs * rhs * grid->weights()).sum()) + 1e-30;
  if (l1 > 1e-6 * std::max(1.0, rhs_scale)) {
    throw numerical_error("solve_leading_order: solvability violated after direction fit");
  }
  sol.x0_0 = {grid, grid->synthesize(sol_coeffs)};

  // residual of the leading equation after substitution
  const auto lap_x0 = laplacian_round(sol.x0_0);
  const ScalarField helm{grid, lap_x0.v + 2.0 * sol.x0_0.v};
  const Array full = rhs - 0.5 * laplacian_round(helm).v;
  // the l <= 1 part was removed by the direction fit; measure the rest
  const auto resid_field =
      filter_degrees({grid, full}, [](int l) { return l >= 2; });
  sol.equation_residual = std::sqrt((resid_field.v.square() * grid->weights()).sum());
  return sol;
}

AdmQuantities adm_from_leading(const LeadingOrderSolution& sol, const ScalarField& h_m2,
                               const ScalarField& h0_m2, const CovectorField& alpha_m1) {
  (void)alpha_m1;
  AdmQuantities adm;
  adm.e = integrate(*h_m2.grid, h0_m2.v - h_m2.v) / (8.0 * kPi);
  adm.m = adm.e / sol.a[0];
  for (int k = 0; k < 3; ++k) adm.p[k] = adm.m * sol.a[1 + k];
  return adm;
}

Embedding31 assemble_embedding(const ScalarField& tau, const std::array<ScalarField, 3>& xhat,
                               const Observer& t0) {
  const Mat4 boost = pure_boost_to(t0.t0);
  Embedding31 out;
  out.grid = tau.grid;
  out.t0 = t0;
  const std::array<const Array*, 4> frame = {&tau.v, &xhat[0].v, &xhat[1].v, &xhat[2].v};
  for (int mu = 0; mu < 4; ++mu) {
    out.x[mu] = Array::Zero(tau.grid->size());
    for (int nu = 0; nu < 4; ++nu) out.x[mu] += boost(mu, nu) * (*frame[nu]);
  }
  return out;
}

namespace {

// metric of the spatial image when the time component is w: sigma + dw dw
SymTensorField spatial_target(const SymTensorField& sigma, const ScalarField& w) {
  const auto dw = gradient(w);
  SymTensorField s = sigma;
  s.tt += dw.th * dw.th;
  s.tp += dw.th * dw.ph;
  s.pp += dw.ph * dw.ph;
  return s;
}

}  // namespace

OptimalResult solve_optimal_finite_r(const SurfaceData& data, const Embedding31& init,
                                     const OptimalOptions& opts) {
  const auto& grid = data.sigma.grid;
  const Real area = integrate(data.sigma, Array::Ones(grid->size()));
  const Real r_area = std::sqrt(area / kFourPi);
  const Real r3 = r_area * r_area * r_area;
  const Real hscale = ((data.Hnorm.v * r_area - 2.0) * r_area).abs().maxCoeff();
  const Real tol = opts.tol_factor * std::max(1.0, hscale) / r3;

  // unknowns: the fixed-frame time component (order one in the anchored
  // gauge), the spatial embedding, and the observer
  ScalarField w{grid, init.x[0]};
  std::array<ScalarField, 3> xvec = {ScalarField{grid, init.x[1]},
                                     ScalarField{grid, init.x[2]},
                                     ScalarField{grid, init.x[3]}};
  Observer t0 = init.t0;

  EmbedOptions eopts;
  eopts.tol_rel = opts.embed_tol;
  eopts.gauge = GaugeTarget::kFromInit;
  eopts.check_curvature = false;
  eopts.trace = opts.trace;

  OptimalResult out;
  out.tol = tol;
  Real damping = 1.0;
  Real prev_residual = -1.0;
  ScalarField w_prev = w;
  Observer t0_prev = t0;

  for (int iter = 0; iter < opts.max_outer; ++iter) {
    const auto er = embed_r3_newton(spatial_target(data.sigma, w), xvec, eopts);
    xvec = er.x;
    Embedding31 emb;
    emb.grid = grid;
    emb.t0 = t0;
    emb.x = {w.v, xvec[0].v, xvec[1].v, xvec[2].v};
    emb.isometry_residual = er.residual;

    const auto tau = tau_field(emb);
    const auto ref = reference_data_from_embedding(emb);
    const auto rho = rho_field(tau, data.sigma, data.Hnorm, ref.H0norm);
    const auto j =
        j_covector(tau, data.sigma, data.Hnorm, data.alphaH, ref.H0norm, ref.alphaH0);
    const auto g = divergence(data.sigma, j);
    const Real sup = g.v.abs().maxCoeff();

    if (iter == 0) {
      out.energy_init = quasilocal_energy(data, emb);
    }
    if (opts.trace) {
      std::cerr << "optimal iter " << iter << " supG=" << sup << " tol=" << tol
                << " damping=" << damping << " embres=" << er.residual << "\n";
    }
    out.residual = sup;
    out.iterations = iter;
    out.emb = emb;

    if (sup <= tol) break;
    if (iter == opts.max_outer - 1) {
      throw numerical_error("solve_optimal_finite_r: no convergence");
    }

    if (prev_residual >= 0.0 && sup > prev_residual * 1.2) {
      damping *= 0.5;
      if (damping < 1.0 / 64.0) {
        throw numerical_error("solve_optimal_finite_r: stalled");
      }
      w = w_prev;
      t0 = t0_prev;
      prev_residual = -1.0;
      continue;
    }
    w_prev = w;
    t0_prev = t0;
    prev_residual = sup;

    // observer correction from the l = 1 moments of the residual
    const Real m_est = std::abs(integrate(data.sigma, rho.v)) / (8.0 * kPi);
    if (m_est > 1e-12) {
      Vec3 dv;
      for (int k = 0; k < 3; ++k) {
        dv[k] = -integrate(*grid, grid->xhat(k) * g.v) * r3 / (8.0 * kPi * m_est * t0.t0[0]);
      }
      dv *= damping;
      if (dv.norm() > 0.5) dv *= 0.5 / dv.norm();
      const Real g0 = std::sqrt(1.0 + dv.squaredNorm());
      const Vec4 local(g0, dv[0], dv[1], dv[2]);
      t0 = Observer(pure_boost_to(t0.t0) * local);
    }

    // time-component correction through the leading fourth-order operator;
    // updates are band-capped so squares of dw stay resolved on the grid
    const auto gc = grid->analyze(g.v);
    Coeffs dw = gc;
    const int lmax = grid->lmax();
    const int band = (opts.w_band > 0) ? opts.w_band : std::max(4, lmax / 2);
    auto upd = [&](int idx, int l) {
      if (l <= 1 || l > band) {
        dw.c[idx] = 0.0;
      } else {
        const Real lam = Real(l) * (l + 1);
        dw.c[idx] = damping * 2.0 * r3 * gc.c[idx] / (lam * (lam - 2.0));
      }
    };
    for (int l = 0; l <= lmax; ++l) upd(Coeffs::index_m0(l), l);
    for (int mm = 1; mm <= lmax; ++mm) {
      for (int l = mm; l <= lmax; ++l) {
        upd(Coeffs::index_cos(l, mm, lmax), l);
        upd(Coeffs::index_sin(l, mm, lmax), l);
      }
    }
    w.v += grid->synthesize(dw);
  }

  out.energy = quasilocal_energy(data, out.emb);
  out.energy_decreased =
      out.energy <= out.energy_init + 1e-12 * std::max(1.0, std::abs(out.energy_init));
  return out;
}

}  // namespace ql
