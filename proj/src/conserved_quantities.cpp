// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "ql/conserved_quantities.hpp"

namespace ql {

KillingField KillingField::rotation(int axis) {
  // L_i = X^j d_k - X^k d_j for (i, j, k) cyclic
  KillingField out;
  const int j = (axis + 1) % 3, k = (axis + 2) % 3;
  out.k_low(1 + j, 1 + k) = 1.0;
  out.k_low(1 + k, 1 + j) = -1.0;
  return out;
}

KillingField KillingField::boost(int axis) {
  KillingField out;
  out.k_low(0, 1 + axis) = 1.0;
  out.k_low(1 + axis, 0) = -1.0;
  return out;
}

KillingField KillingField::translation_of(const Vec4& b) {
  KillingField out;
  out.translation = b;
  return out;
}

KillingField KillingField::transformed(const Mat4& lorentz) const {
  KillingField out;
  const Mat4 m = lorentz * mixed() * lorentz.inverse();
  out.k_low = (m.transpose() * minkowski_metric());
  // enforce exact antisymmetry against rounding
  out.k_low = 0.5 * (out.k_low - out.k_low.transpose());
  out.translation = lorentz * translation;
  return out;
}

EvaluationContext make_context(const SurfaceData& data, const Embedding31& emb) {
  EvaluationContext ctx;
  ctx.grid = emb.grid;
  ctx.t0 = emb.t0.t0;
  const auto ref = reference_data_from_embedding(emb);
  const auto tau = tau_field(emb);
  ctx.rho = rho_field(tau, data.sigma, data.Hnorm, ref.H0norm).v;
  ctx.j = j_covector(tau, data.sigma, data.Hnorm, data.alphaH, ref.H0norm, ref.alphaH0);
  ctx.inv = invert_metric(data.sigma);
  ctx.measure = ctx.grid->weights() * ctx.grid->csc_theta() * area_element(data.sigma);
  for (int mu = 0; mu < 4; ++mu) {
    ctx.x[mu] = emb.x[mu];
    const auto jet = scalar_jet1({emb.grid, emb.x[mu]});
    ctx.dx_th[mu] = jet.dt;
    ctx.dx_ph[mu] = jet.dp;
  }
  return ctx;
}

namespace {

// j with the index raised by the inverse induced metric
struct RaisedJ {
  Array th, ph;
};

RaisedJ raise_j(const EvaluationContext& ctx) {
  return {ctx.inv.tt * ctx.j.th + ctx.inv.tp * ctx.j.ph,
          ctx.inv.tp * ctx.j.th + ctx.inv.pp * ctx.j.ph};
}

}  // namespace

Real evaluate(const EvaluationContext& ctx, const KillingField& k) {
  const int n = ctx.grid->size();
  const Mat4 m = k.mixed();
  const auto ju = raise_j(ctx);

  Array integrand(n);
  for (int node = 0; node < n; ++node) {
    Vec4 x, et, ep;
    for (int mu = 0; mu < 4; ++mu) {
      x[mu] = ctx.x[mu][node];
      et[mu] = ctx.dx_th[mu][node];
      ep[mu] = ctx.dx_ph[mu][node];
    }
    const Vec4 kv = m * x + k.translation;
    const Real k_dot_t0 = minkowski_dot(kv, ctx.t0);
    const Real k_et = minkowski_dot(kv, et);
    const Real k_ep = minkowski_dot(kv, ep);
    integrand[node] =
        k_dot_t0 * ctx.rho[node] + k_et * ju.th[node] + k_ep * ju.ph[node];
  }
  return -(ctx.measure * integrand).sum() / (8.0 * kPi);
}

Real evaluate(const SurfaceData& data, const Embedding31& emb, const KillingField& k) {
  return evaluate(make_context(data, emb), k);
}

ConservedDual dual_element(const EvaluationContext& ctx) {
  const int n = ctx.grid->size();
  const auto ju = raise_j(ctx);
  ConservedDual out;
  for (int node = 0; node < n; ++node) {
    Vec4 x, et, ep;
    for (int mu = 0; mu < 4; ++mu) {
      x[mu] = ctx.x[mu][node];
      et[mu] = ctx.dx_th[mu][node];
      ep[mu] = ctx.dx_ph[mu][node];
    }
    const Vec4 flow = ctx.rho[node] * ctx.t0 + ju.th[node] * et + ju.ph[node] * ep;
    const Real w = ctx.measure[node];
    out.p += w * flow;
    out.phi += w * (x * flow.transpose() - flow * x.transpose());
  }
  out.p /= 8.0 * kPi;
  out.phi /= -16.0 * kPi;
  return out;
}

ConservedDual dual_element(const SurfaceData& data, const Embedding31& emb) {
  return dual_element(make_context(data, emb));
}

Real pair(const ConservedDual& dual, const KillingField& k) {
  return (k.k_low.array() * dual.phi.array()).sum();
}

TranslationCheck translate_embedding_law(const SurfaceData& data, const Embedding31& emb,
                                         const Vec4& b) {
  const auto base = dual_element(data, emb);
  TranslationCheck out;
  out.shifted = dual_element(data, emb.translated(b));
  const Mat4 law = base.phi - 0.5 * (b * base.p.transpose() - base.p * b.transpose());
  out.deviation = (out.shifted.phi - law).cwiseAbs().maxCoeff();
  return out;
}

BoostDerivativeCheck boost_energy_derivative(const SurfaceData& data, const Embedding31& emb,
                                             int axis, Real h) {
  if ((emb.t0.t0 - Vec4(1, 0, 0, 0)).norm() > 1e-12) {
    throw config_error("boost_energy_derivative expects the rest observer");
  }
  auto energy_at = [&](Real s) {
    Vec4 t0(std::sqrt(1.0 + s * s), 0.0, 0.0, 0.0);
    t0[1 + axis] = s;
    Embedding31 shifted = emb;
    shifted.t0 = Observer(t0);
    // K = T0 as a pure translation: the quasi-local energy of the observer
    return evaluate(data, shifted, KillingField::translation_of(t0));
  };
  BoostDerivativeCheck out;
  out.derivative =
      (energy_at(-2.0 * h) - 8.0 * energy_at(-h) + 8.0 * energy_at(h) - energy_at(2.0 * h)) /
      (12.0 * h);
  KillingField k = KillingField::translation_of(Vec4::Unit(1 + axis));
  out.pairing = evaluate(data, emb, k);
  return out;
}

Real komar_angular_momentum(Real m, Real a, Real R, const GridPtr& grid,
                            const ScalarField* frame_rapidity) {
  const auto model = SpacetimeModel::kerr(m, a);
  if (R <= model.min_radius()) {
    throw numerical_error("komar integral sphere inside the excluded region");
  }
  const int n = grid->size();
  Array integrand(n);
  for (int node = 0; node < n; ++node) {
    const int i = node / grid->nphi();
    const Real theta = grid->theta(i);
    const Vec4 q(0.0, R, theta, 0.0);  // axisymmetric: phi drops out
    const auto jet = metric4_jet(model, q, 1);
    const auto gamma = christoffel4(jet);
    const Mat4 ginv = jet.g.inverse();

    // e4: future unit normal of the slice; e3: outward radial within it
    Vec4 e4 = -ginv.col(0) / std::sqrt(-ginv(0, 0));
    if (e4[0] < 0) e4 = -e4;
    Vec4 e3 = Vec4::Zero();
    e3[1] = 1.0 / std::sqrt(jet.g(1, 1));

    if (frame_rapidity) {
      const Real chi = frame_rapidity->v[node];
      const Vec4 b3 = std::cosh(chi) * e3 + std::sinh(chi) * e4;
      const Vec4 b4 = std::sinh(chi) * e3 + std::cosh(chi) * e4;
      e3 = b3;
      e4 = b4;
    }

    // < grad_{d_phi} e3, e4 > for axisymmetric frames: e3^nu Gamma^mu_{phi nu} g_mu e4
    Real val = 0.0;
    for (int nu = 0; nu < 4; ++nu) {
      if (e3[nu] == 0.0) continue;
      for (int mu = 0; mu < 4; ++mu) {
        val += e3[nu] * gamma[mu](3, nu) * (jet.g.row(mu).dot(e4));
      }
    }
    const Real area = std::sqrt(jet.g(2, 2) * jet.g(3, 3) - jet.g(2, 3) * jet.g(2, 3));
    integrand[node] = val * area / grid->sin_theta()[node];
  }
  return (grid->weights() * integrand).sum() / (8.0 * kPi);
}

}  // namespace ql
