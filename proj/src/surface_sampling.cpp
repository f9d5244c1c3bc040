// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "ql/surface_sampling.hpp"

#include "ql/s2_metric_ops.hpp"
#include "ql/s2_ops.hpp"

namespace ql {

namespace {

struct AmbientPoint {
  Mat4 g;
  std::array<Mat4, 4> gamma;
  bool flat;
};

SurfaceBuild build_surface_impl(const SurfaceChart& chart,
                                const std::function<AmbientPoint(int)>& ambient) {
  const auto& grid = chart.grid;
  const int n = grid->size();

  SurfaceBuild out;
  out.data.sigma = SymTensorField::zero(grid);
  out.data.Hnorm = ScalarField::zero(grid);
  out.data.alphaH = CovectorField::zero(grid);
  for (int mu = 0; mu < 4; ++mu) {
    out.H[mu] = Array::Zero(n);
    out.J[mu] = Array::Zero(n);
    out.e3[mu] = Array::Zero(n);
    out.e4[mu] = Array::Zero(n);
  }
  out.hhat = Array::Zero(n);
  out.h_e4 = Array::Zero(n);

  std::vector<Mat4> gs(n);
  std::vector<Real> hnorm2(n);

  for (int node = 0; node < n; ++node) {
    const AmbientPoint amb = ambient(node);
    gs[node] = amb.g;

    Vec4 et, ep, dtt, dtp, dpp, vt, vr;
    for (int mu = 0; mu < 4; ++mu) {
      et[mu] = chart.e_th[mu][node];
      ep[mu] = chart.e_ph[mu][node];
      dtt[mu] = chart.de_tt[mu][node];
      dtp[mu] = chart.de_tp[mu][node];
      dpp[mu] = chart.de_pp[mu][node];
      vt[mu] = chart.v_time[mu][node];
      vr[mu] = chart.v_radial[mu][node];
    }

    auto dot = [&](const Vec4& a, const Vec4& b) { return a.dot(amb.g * b); };

    const Real stt = dot(et, et), stp = dot(et, ep), spp = dot(ep, ep);
    const Real det = stt * spp - stp * stp;
    if (stt <= 0.0 || det <= 0.0) {
      throw numerical_error("surface is not spacelike (induced metric not positive)");
    }
    out.data.sigma.tt[node] = stt;
    out.data.sigma.tp[node] = stp;
    out.data.sigma.pp[node] = spp;
    const Real itt = spp / det, itp = -stp / det, ipp = stt / det;

    // second derivative vectors with the ambient connection
    auto with_gamma = [&](const Vec4& plain, const Vec4& ea, const Vec4& eb) {
      Vec4 w = plain;
      if (!amb.flat) {
        for (int mu = 0; mu < 4; ++mu) {
          w[mu] += ea.dot(amb.gamma[mu] * eb);
        }
      }
      return w;
    };
    const Vec4 wtt = with_gamma(dtt, et, et);
    const Vec4 wtp = with_gamma(dtp, et, ep);
    const Vec4 wpp = with_gamma(dpp, ep, ep);

    auto normal_part = [&](const Vec4& w) {
      const Real ct = dot(w, et), cp = dot(w, ep);
      const Real ut = itt * ct + itp * cp;
      const Real up = itp * ct + ipp * cp;
      return Vec4(w - ut * et - up * ep);
    };

    // mean curvature vector H = sigma^{ab} II_ab
    const Vec4 h = itt * normal_part(wtt) + 2.0 * itp * normal_part(wtp) +
                   ipp * normal_part(wpp);
    const Real h2 = dot(h, h);
    if (h2 <= 0.0) {
      throw numerical_error("mean curvature vector is not spacelike");
    }
    hnorm2[node] = h2;
    out.data.Hnorm.v[node] = std::sqrt(h2);

    // orthonormal normal frame: e4 future timelike, e3 outward spacelike
    Vec4 u = normal_part(vt);
    const Real uu = dot(u, u);
    if (uu >= 0.0) throw numerical_error("time seed is not timelike after projection");
    Vec4 e4 = u / std::sqrt(-uu);
    if (e4[0] < 0.0) e4 = -e4;
    Vec4 w = normal_part(vr);
    w = w + dot(w, e4) * e4;  // remove the e4 component (note <e4,e4> = -1)
    const Real ww = dot(w, w);
    if (ww <= 0.0) throw numerical_error("radial seed degenerate in normal space");
    Vec4 e3 = w / std::sqrt(ww);
    if (dot(e3, normal_part(vr)) < 0.0) e3 = -e3;

    const Real alpha = dot(h, e3);
    const Real beta = -dot(h, e4);
    // reflection through the incoming light cone; J is future timelike-dual
    const Vec4 jvec = -beta * e3 - alpha * e4;

    for (int mu = 0; mu < 4; ++mu) {
      out.H[mu][node] = h[mu];
      out.J[mu][node] = jvec[mu];
      out.e3[mu][node] = e3[mu];
      out.e4[mu][node] = e4[mu];
    }
    out.hhat[node] = -alpha;
    out.h_e4[node] = beta;
  }

  out.area = area_element(out.data.sigma);

  // alpha_H(d_a) = < grad_a (J/|H|), H/|H| > = < grad_a J, H > / |H|^2
  std::array<ScalarJet, 4> jjet;
  for (int mu = 0; mu < 4; ++mu) {
    jjet[mu] = scalar_jet1({grid, out.J[mu]});
  }
  for (int node = 0; node < n; ++node) {
    const AmbientPoint amb = ambient(node);
    Vec4 et, ep, h, jv;
    for (int mu = 0; mu < 4; ++mu) {
      et[mu] = chart.e_th[mu][node];
      ep[mu] = chart.e_ph[mu][node];
      h[mu] = out.H[mu][node];
      jv[mu] = out.J[mu][node];
    }
    for (int a = 0; a < 2; ++a) {
      Vec4 dj;
      for (int mu = 0; mu < 4; ++mu) dj[mu] = (a == 0) ? jjet[mu].dt[node] : jjet[mu].dp[node];
      if (!amb.flat) {
        const Vec4& ea = (a == 0) ? et : ep;
        for (int mu = 0; mu < 4; ++mu) {
          dj[mu] += ea.dot(amb.gamma[mu] * jv);
        }
      }
      const Real val = dj.dot(gs[node] * h) / hnorm2[node];
      if (a == 0) {
        out.data.alphaH.th[node] = val;
      } else {
        out.data.alphaH.ph[node] = val;
      }
    }
  }
  return out;
}

}  // namespace

SurfaceBuild build_surface_flat(const SurfaceChart& chart) {
  AmbientPoint amb;
  amb.g = minkowski_metric();
  amb.flat = true;
  return build_surface_impl(chart, [&](int) { return amb; });
}

SurfaceBuild build_surface(const SurfaceChart& chart, const SpacetimeModel& model) {
  if (model.kind == ModelKind::Minkowski) return build_surface_flat(chart);
  const int n = chart.grid->size();
  std::vector<AmbientPoint> cache(n);
  for (int node = 0; node < n; ++node) {
    Vec4 q;
    for (int mu = 0; mu < 4; ++mu) q[mu] = chart.q[mu][node];
    const auto jet = metric4_jet(model, q, 1);
    cache[node] = {jet.g, christoffel4(jet), false};
  }
  return build_surface_impl(chart, [&](int node) { return cache[node]; });
}

SurfaceData coordinate_sphere_surface_data(const SpacetimeModel& model, Real t, Real r,
                                           const GridPtr& grid, SurfaceBuild* full) {
  if (r <= model.min_radius()) {
    throw numerical_error("coordinate sphere inside the excluded region");
  }
  const int n = grid->size();
  SurfaceChart chart;
  chart.grid = grid;
  for (int mu = 0; mu < 4; ++mu) {
    chart.q[mu] = Array::Zero(n);
    chart.e_th[mu] = Array::Zero(n);
    chart.e_ph[mu] = Array::Zero(n);
    chart.de_tt[mu] = Array::Zero(n);
    chart.de_tp[mu] = Array::Zero(n);
    chart.de_pp[mu] = Array::Zero(n);
    chart.v_time[mu] = Array::Zero(n);
    chart.v_radial[mu] = Array::Zero(n);
  }
  chart.q[0] = Array::Constant(n, t);
  chart.v_time[0] = Array::Ones(n);

  if (model.cartesian_chart()) {
    for (int i = 0; i < 3; ++i) {
      chart.q[1 + i] = r * grid->xhat(i);
      chart.e_th[1 + i] = r * grid->xhat_d(i, 1, 0);
      chart.e_ph[1 + i] = r * grid->xhat_d(i, 0, 1);
      chart.de_tt[1 + i] = r * grid->xhat_d(i, 2, 0);
      chart.de_tp[1 + i] = r * grid->xhat_d(i, 1, 1);
      chart.de_pp[1 + i] = r * grid->xhat_d(i, 0, 2);
      chart.v_radial[1 + i] = grid->xhat(i);
    }
  } else {
    // Boyer-Lindquist chart: the parameter sphere is the coordinate sphere
    chart.q[1] = Array::Constant(n, r);
    for (int i = 0; i < grid->ntheta(); ++i) {
      for (int j = 0; j < grid->nphi(); ++j) {
        const int node = grid->node(i, j);
        chart.q[2][node] = grid->theta(i);
        chart.q[3][node] = grid->phi(j);
      }
    }
    chart.e_th[2] = Array::Ones(n);
    chart.e_ph[3] = Array::Ones(n);
    chart.v_radial[1] = Array::Ones(n);
  }

  auto built = build_surface(chart, model);
  if (full) *full = built;
  return full ? full->data : built.data;
}

SurfaceData kerr_slice_surface_data(Real m, Real a, Real R, const ScalarField& f,
                                    const GridPtr& grid, SurfaceBuild* full) {
  const auto model = SpacetimeModel::kerr(m, a);
  if (R <= model.min_radius()) {
    throw numerical_error("kerr slice sphere inside the excluded region");
  }
  const int n = grid->size();
  const auto fj = scalar_jet(f);

  SurfaceChart chart;
  chart.grid = grid;
  for (int mu = 0; mu < 4; ++mu) {
    chart.q[mu] = Array::Zero(n);
    chart.e_th[mu] = Array::Zero(n);
    chart.e_ph[mu] = Array::Zero(n);
    chart.de_tt[mu] = Array::Zero(n);
    chart.de_tp[mu] = Array::Zero(n);
    chart.de_pp[mu] = Array::Zero(n);
    chart.v_time[mu] = Array::Zero(n);
    chart.v_radial[mu] = Array::Zero(n);
  }
  chart.q[0] = fj.v;
  chart.q[1] = Array::Constant(n, R);
  for (int i = 0; i < grid->ntheta(); ++i) {
    for (int j = 0; j < grid->nphi(); ++j) {
      const int node = grid->node(i, j);
      chart.q[2][node] = grid->theta(i);
      chart.q[3][node] = grid->phi(j);
    }
  }
  chart.e_th[0] = fj.dt;
  chart.e_th[2] = Array::Ones(n);
  chart.e_ph[0] = fj.dp;
  chart.e_ph[3] = Array::Ones(n);
  chart.de_tt[0] = fj.dtt;
  chart.de_tp[0] = fj.dtp;
  chart.de_pp[0] = fj.dpp;
  chart.v_time[0] = Array::Ones(n);
  chart.v_radial[1] = Array::Ones(n);

  auto built = build_surface(chart, model);
  if (full) *full = built;
  return full ? full->data : built.data;
}

}  // namespace ql
