// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "ql/initial_data.hpp"

#include "ql/fitting.hpp"

namespace ql {

namespace {

void check_exterior(const SpacetimeModel& model, Real t, const Vec3& p) {
  if (model.kind == ModelKind::Minkowski) return;
  if (model.kind == ModelKind::KerrBL) {
    if (p.norm() <= model.min_radius()) {
      throw numerical_error("sample point inside excluded Kerr region");
    }
    return;
  }
  const Real gamma = model.lorentz_gamma();
  const Real s = gamma * p[2] + model.beta * gamma * t;
  const Real rho = std::sqrt(p[0] * p[0] + p[1] * p[1] + s * s);
  if (rho <= model.min_radius()) {
    throw numerical_error("sample point inside excluded isotropic region");
  }
}

// Christoffels of a 3-metric from pointwise data.
std::array<Mat3, 3> christoffel3(const Mat3& ginv, const std::array<Mat3, 3>& dg) {
  std::array<Mat3, 3> gamma;
  for (int l = 0; l < 3; ++l) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        Real s = 0.0;
        for (int m = 0; m < 3; ++m) {
          s += 0.5 * ginv(l, m) * (dg[i](m, j) + dg[j](m, i) - dg[m](i, j));
        }
        gamma[l](i, j) = s;
      }
    }
  }
  return gamma;
}

// Jacobian dx/d(r,theta,phi) and its chart derivatives.
Mat3 sphere_jacobian(Real r, Real theta, Real phi) {
  const Real st = std::sin(theta), ct = std::cos(theta);
  const Real sp = std::sin(phi), cp = std::cos(phi);
  Mat3 j;
  j.col(0) = Vec3(st * sp, st * cp, ct);
  j.col(1) = Vec3(r * ct * sp, r * ct * cp, -r * st);
  j.col(2) = Vec3(r * st * cp, -r * st * sp, 0.0);
  return j;
}

std::array<Mat3, 3> sphere_jacobian_derivs(Real r, Real theta, Real phi) {
  const Real st = std::sin(theta), ct = std::cos(theta);
  const Real sp = std::sin(phi), cp = std::cos(phi);
  std::array<Mat3, 3> dj;  // d/dr, d/dtheta, d/dphi of the Jacobian
  dj[0].setZero();
  dj[0].col(1) = Vec3(ct * sp, ct * cp, -st);
  dj[0].col(2) = Vec3(st * cp, -st * sp, 0.0);
  dj[1].col(0) = Vec3(ct * sp, ct * cp, -st);
  dj[1].col(1) = Vec3(-r * st * sp, -r * st * cp, -r * ct);
  dj[1].col(2) = Vec3(r * ct * cp, -r * ct * sp, 0.0);
  dj[2].col(0) = Vec3(st * cp, -st * sp, 0.0);
  dj[2].col(1) = Vec3(r * ct * cp, -r * ct * sp, 0.0);
  dj[2].col(2) = Vec3(-r * st * sp, -r * st * cp, 0.0);
  return dj;
}

}  // namespace

ChartData chart_data(const SpacetimeModel& model, const Vec4& q, int order) {
  const auto jet = metric4_jet(model, q, order >= 2 ? 2 : 1);
  ChartData out;
  out.has_second = (order >= 2);

  Mat3 g3;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g3(i, j) = jet.g(1 + i, 1 + j);
  out.g = g3;
  const Mat3 ginv = g3.inverse();

  Vec3 shift;
  for (int i = 0; i < 3; ++i) shift[i] = jet.g(0, 1 + i);
  out.shift_cov = shift;
  const Real n2 = -jet.g(0, 0) + shift.dot(ginv * shift);
  if (n2 <= 0.0) throw numerical_error("slice is not spacelike (lapse^2 <= 0)");
  const Real lapse = std::sqrt(n2);
  out.lapse = lapse;

  for (int m = 0; m < 3; ++m) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out.dg[m](i, j) = jet.dg[1 + m](1 + i, 1 + j);
  }
  const auto gamma3 = christoffel3(ginv, out.dg);

  // S_ij = D_i shift_j + D_j shift_i - dt g_ij ;  k = S / (2N)
  auto dshift = [&](int m, int j) { return jet.dg[1 + m](0, 1 + j); };
  Mat3 s;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Real cov = dshift(i, j) + dshift(j, i);
      for (int l = 0; l < 3; ++l) cov -= 2.0 * gamma3[l](i, j) * shift[l];
      s(i, j) = cov - jet.dg[0](1 + i, 1 + j);
    }
  }
  out.k = s / (2.0 * lapse);

  if (!out.has_second) return out;

  for (int m = 0; m < 3; ++m) {
    for (int n = 0; n < 3; ++n) {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out.ddg[m][n](i, j) = jet.ddg[1 + m][1 + n](1 + i, 1 + j);
    }
  }

  // dN    (N^2 = -g00 + shift . ginv shift)
  Vec3 dlapse;
  for (int m = 0; m < 3; ++m) {
    const Mat3 dginv = -ginv * out.dg[m] * ginv;
    Vec3 dsh;
    for (int j = 0; j < 3; ++j) dsh[j] = dshift(m, j);
    const Real dn2 =
        -jet.dg[1 + m](0, 0) + shift.dot(dginv * shift) + 2.0 * dsh.dot(ginv * shift);
    dlapse[m] = dn2 / (2.0 * lapse);
  }

  // dGamma
  std::array<std::array<Mat3, 3>, 3> dgamma;  // [m][l](i,j)
  for (int m = 0; m < 3; ++m) {
    const Mat3 dginv = -ginv * out.dg[m] * ginv;
    for (int l = 0; l < 3; ++l) {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          Real acc = 0.0;
          for (int p = 0; p < 3; ++p) {
            acc += 0.5 * dginv(l, p) * (out.dg[i](p, j) + out.dg[j](p, i) - out.dg[p](i, j));
            acc += 0.5 * ginv(l, p) *
                   (out.ddg[m][i](p, j) + out.ddg[m][j](p, i) - out.ddg[m][p](i, j));
          }
          dgamma[m][l](i, j) = acc;
        }
      }
    }
  }

  for (int m = 0; m < 3; ++m) {
    Mat3 ds;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        Real acc = jet.ddg[1 + m][1 + i](0, 1 + j) + jet.ddg[1 + m][1 + j](0, 1 + i);
        for (int l = 0; l < 3; ++l) {
          acc -= 2.0 * dgamma[m][l](i, j) * shift[l];
          acc -= 2.0 * gamma3[l](i, j) * dshift(m, l);
        }
        acc -= jet.ddg[1 + m][0](1 + i, 1 + j);
        ds(i, j) = acc;
      }
    }
    out.dk[m] = ds / (2.0 * lapse) - out.k * (dlapse[m] / lapse);
  }
  return out;
}

InitialDataSample sample_initial_data(const SpacetimeModel& model, Real t, const Vec3& p) {
  check_exterior(model, t, p);
  InitialDataSample out;

  if (model.cartesian_chart()) {
    const auto cd = chart_data(model, Vec4(t, p[0], p[1], p[2]), 1);
    out.g = cd.g;
    out.k = cd.k;
    out.dg = cd.dg;
    return out;
  }

  // Kerr: sample in the Boyer-Lindquist chart and push to the Cartesian frame
  Real r, theta, phi;
  cartesian_to_spherical(p, &r, &theta, &phi);
  const auto cd = chart_data(model, Vec4(t, r, theta, phi), 1);
  const Mat3 j = sphere_jacobian(r, theta, phi);
  const Mat3 jinv = j.inverse();
  out.g = jinv.transpose() * cd.g * jinv;
  out.k = jinv.transpose() * cd.k * jinv;

  const auto dj = sphere_jacobian_derivs(r, theta, phi);
  for (int m = 0; m < 3; ++m) {
    // chart derivative of the Cartesian components, then chain rule
    Mat3 acc = Mat3::Zero();
    for (int n = 0; n < 3; ++n) {
      const Mat3 djinv = -jinv * dj[n] * jinv;
      const Mat3 dg_chart =
          djinv.transpose() * cd.g * jinv + jinv.transpose() * cd.dg[n] * jinv +
          jinv.transpose() * cd.g * djinv;
      acc += jinv(n, m) * dg_chart;
    }
    out.dg[m] = acc;
  }
  return out;
}

Mat3 conjugate_momentum(const Mat3& g, const Mat3& k) {
  const Real trk = (g.inverse() * k).trace();
  return k - trk * g;
}

ConstraintResidual constraint_residual(const SpacetimeModel& model, Real t, const Vec3& p) {
  check_exterior(model, t, p);
  Vec4 q;
  if (model.cartesian_chart()) {
    q = Vec4(t, p[0], p[1], p[2]);
  } else {
    Real r, theta, phi;
    cartesian_to_spherical(p, &r, &theta, &phi);
    q = Vec4(t, r, theta, phi);
  }
  const auto cd = chart_data(model, q, 2);
  const Mat3 ginv = cd.g.inverse();
  const auto gamma = christoffel3(ginv, cd.dg);

  std::array<std::array<Mat3, 3>, 3> dgamma;
  for (int m = 0; m < 3; ++m) {
    const Mat3 dginv = -ginv * cd.dg[m] * ginv;
    for (int l = 0; l < 3; ++l) {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          Real acc = 0.0;
          for (int pq = 0; pq < 3; ++pq) {
            acc += 0.5 * dginv(l, pq) * (cd.dg[i](pq, j) + cd.dg[j](pq, i) - cd.dg[pq](i, j));
            acc += 0.5 * ginv(l, pq) *
                   (cd.ddg[m][i](pq, j) + cd.ddg[m][j](pq, i) - cd.ddg[m][pq](i, j));
          }
          dgamma[m][l](i, j) = acc;
        }
      }
    }
  }

  // scalar curvature
  Real rscal = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Real ric = 0.0;
      for (int l = 0; l < 3; ++l) {
        ric += dgamma[l][l](i, j) - dgamma[i][l](l, j);
        for (int m = 0; m < 3; ++m) {
          ric += gamma[l](l, m) * gamma[m](i, j) - gamma[l](i, m) * gamma[m](l, j);
        }
      }
      rscal += ginv(i, j) * ric;
    }
  }

  const Real trk = (ginv * cd.k).trace();
  const Real k2 = (ginv * cd.k * ginv * cd.k).trace();

  ConstraintResidual res;
  res.hamiltonian = rscal + trk * trk - k2;

  for (int j = 0; j < 3; ++j) {
    Real div = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int m = 0; m < 3; ++m) {
        Real cov = cd.dk[m](i, j);
        for (int l = 0; l < 3; ++l) {
          cov -= gamma[l](m, i) * cd.k(l, j) + gamma[l](m, j) * cd.k(i, l);
        }
        div += ginv(i, m) * cov;
      }
    }
    // d_j tr k
    const Mat3 dginv = -ginv * cd.dg[j] * ginv;
    const Real dtrk = (dginv * cd.k).trace() + (ginv * cd.dk[j]).trace();
    res.momentum[j] = div - dtrk;
  }
  res.momentum_norm = std::sqrt(res.momentum.dot(ginv * res.momentum));
  return res;
}

DivergenceCheckResult constraint_divergence_check(const SpacetimeModel& model,
                                                  const std::vector<Real>& radii,
                                                  const GridPtr& grid) {
  if (!model.cartesian_chart()) {
    throw config_error("constraint_divergence_check expects a Cartesian-chart model");
  }
  const int n = grid->size();
  DivergenceCheckResult out;
  out.radii = radii;

  const int nr = static_cast<int>(radii.size());
  Eigen::MatrixXd pi_ar_th(nr, n), pi_ar_ph(nr, n);
  Eigen::MatrixXd pi_ab_tt(nr, n), pi_ab_tp(nr, n), pi_ab_pp(nr, n);

  for (int ir = 0; ir < nr; ++ir) {
    const Real r = radii[ir];
    Array brr(n);              // radial identity error per node
    Array bta(n), bpa(n);      // angular identity error components
    Array pirr(n), dpirr(n);
    CovectorField piar = CovectorField::zero(grid);
    CovectorField dpiar = CovectorField::zero(grid);
    SymTensorField piab = SymTensorField::zero(grid);
    SymTensorField sigma = SymTensorField::zero(grid);
    Array gab_pi(n);           // g^{ab} pi_ab with the full inverse 3-metric
    CovectorField vexact = CovectorField::zero(grid);
    Array vexact_r(n);

    for (int node = 0; node < n; ++node) {
      const int i = node / grid->nphi();
      const int jn = node % grid->nphi();
      const Real th = grid->theta(i), ph = grid->phi(jn);
      const Vec3 xhat(std::sin(th) * std::sin(ph), std::sin(th) * std::cos(ph), std::cos(th));
      const Vec3 p = r * xhat;
      const auto cd = chart_data(model, Vec4(0.0, p[0], p[1], p[2]), 2);
      const Mat3 ginv = cd.g.inverse();
      const Real trk = (ginv * cd.k).trace();
      const Mat3 pi = cd.k - trk * cd.g;

      std::array<Mat3, 3> dpi;
      for (int m = 0; m < 3; ++m) {
        const Mat3 dginv = -ginv * cd.dg[m] * ginv;
        const Real dtrk = (dginv * cd.k).trace() + (ginv * cd.dk[m]).trace();
        dpi[m] = cd.dk[m] - dtrk * cd.g - trk * cd.dg[m];
      }

      // exact divergence (the momentum constraint; ~0 in vacuum)
      const auto gamma = christoffel3(ginv, cd.dg);
      Vec3 v = Vec3::Zero();
      for (int j = 0; j < 3; ++j) {
        for (int ii = 0; ii < 3; ++ii) {
          for (int m = 0; m < 3; ++m) {
            Real cov = dpi[m](ii, j);
            for (int l = 0; l < 3; ++l) {
              cov -= gamma[l](m, ii) * pi(l, j) + gamma[l](m, j) * pi(ii, l);
            }
            v[j] += ginv(ii, m) * cov;
          }
        }
      }

      const Mat3 jc = sphere_jacobian(r, th, ph);
      const Vec3 et = jc.col(1), ep = jc.col(2);

      pirr[node] = xhat.dot(pi * xhat);
      piar.th[node] = et.dot(pi * xhat);
      piar.ph[node] = ep.dot(pi * xhat);
      piab.tt[node] = et.dot(pi * et);
      piab.tp[node] = et.dot(pi * ep);
      piab.pp[node] = ep.dot(pi * ep);
      sigma.tt[node] = et.dot(cd.g * et);
      sigma.tp[node] = et.dot(cd.g * ep);
      sigma.pp[node] = ep.dot(cd.g * ep);

      Mat3 dpi_r = Mat3::Zero();
      for (int m = 0; m < 3; ++m) dpi_r += xhat[m] * dpi[m];
      dpirr[node] = xhat.dot(dpi_r * xhat);
      dpiar.th[node] = (et / r).dot(pi * xhat) + et.dot(dpi_r * xhat);
      dpiar.ph[node] = (ep / r).dot(pi * xhat) + ep.dot(dpi_r * xhat);

      // full spherical-chart inverse metric, angular block
      const Mat3 gsph = jc.transpose() * cd.g * jc;
      const Mat3 gsph_inv = gsph.inverse();
      gab_pi[node] = gsph_inv(1, 1) * piab.tt[node] + 2.0 * gsph_inv(1, 2) * piab.tp[node] +
                     gsph_inv(2, 2) * piab.pp[node];

      vexact_r[node] = xhat.dot(v);
      vexact.th[node] = et.dot(v);
      vexact.ph[node] = ep.dot(v);
    }

    const auto div_piar = divergence(sigma, piar);
    const auto div_piab = divergence_tensor(sigma, piab);

    brr = vexact_r - (dpirr + div_piar.v + 2.0 * pirr / r - gab_pi / r);
    bta = vexact.th - (dpiar.th + 2.0 * piar.th / r + div_piab.th);
    bpa = vexact.ph - (dpiar.ph + 2.0 * piar.ph / r + div_piab.ph);

    out.radial_error.push_back(brr.abs().maxCoeff());
    out.angular_error.push_back(std::max(bta.abs().maxCoeff(), bpa.abs().maxCoeff()));
    out.exact_divergence_sup =
        std::max({out.exact_divergence_sup, vexact_r.abs().maxCoeff(),
                  vexact.th.abs().maxCoeff(), vexact.ph.abs().maxCoeff()});

    pi_ar_th.row(ir) = piar.th.matrix().transpose();
    pi_ar_ph.row(ir) = piar.ph.matrix().transpose();
    pi_ab_tt.row(ir) = piab.tt.matrix().transpose();
    pi_ab_tp.row(ir) = piab.tp.matrix().transpose();
    pi_ab_pp.row(ir) = piab.pp.matrix().transpose();
  }

  out.radial_exponent = fit_log_slope(radii, out.radial_error);
  out.angular_exponent = fit_log_slope(radii, out.angular_error);

  // leading-coefficient extraction and the divergence identity for pi
  const std::vector<Real> pow1 = {-1.0, -2.0, -3.0, -4.0};
  const std::vector<Real> pow0 = {0.0, -1.0, -2.0, -3.0};
  CovectorField pi1 = CovectorField::zero(grid);
  SymTensorField pi0 = SymTensorField::zero(grid);
  pi1.th = fit_powers(radii, pi_ar_th, pow1).row(0).array().transpose();
  pi1.ph = fit_powers(radii, pi_ar_ph, pow1).row(0).array().transpose();
  pi0.tt = fit_powers(radii, pi_ab_tt, pow0).row(0).array().transpose();
  pi0.tp = fit_powers(radii, pi_ab_tp, pow0).row(0).array().transpose();
  pi0.pp = fit_powers(radii, pi_ab_pp, pow0).row(0).array().transpose();

  // leading-order radial-angular momentum identity: pi_ar^(-1) + div pi^(0) = 0
  const auto div_round = divergence_tensor(SymTensorField::round(grid), pi0);
  out.pi_identity_sup = std::max((pi1.th + div_round.th).abs().maxCoeff(),
                                 (pi1.ph + div_round.ph).abs().maxCoeff());
  return out;
}

}  // namespace ql
