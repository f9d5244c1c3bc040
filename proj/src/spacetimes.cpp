// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "ql/spacetimes.hpp"

#include <cmath>

namespace ql {

SpacetimeModel SpacetimeModel::schwarzschild(Real m) {
  if (m <= 0.0) throw config_error("schwarzschild: mass must be positive");
  SpacetimeModel s;
  s.kind = ModelKind::SchwarzschildIsotropic;
  s.mass = m;
  return s;
}

SpacetimeModel SpacetimeModel::boosted_schwarzschild(Real m, Real beta) {
  if (m <= 0.0) throw config_error("boosted_schwarzschild: mass must be positive");
  if (std::abs(beta) >= 1.0) throw config_error("boosted_schwarzschild: |beta| < 1 required");
  SpacetimeModel s;
  s.kind = ModelKind::BoostedSchwarzschild;
  s.mass = m;
  s.beta = beta;
  return s;
}

SpacetimeModel SpacetimeModel::kerr(Real m, Real a) {
  if (m <= 0.0) throw config_error("kerr: mass must be positive");
  if (std::abs(a) >= m) throw config_error("kerr: |a| < m required");
  SpacetimeModel s;
  s.kind = ModelKind::KerrBL;
  s.mass = m;
  s.spin = a;
  return s;
}

Real SpacetimeModel::min_radius() const {
  switch (kind) {
    case ModelKind::Minkowski:
      return 0.0;
    case ModelKind::SchwarzschildIsotropic:
    case ModelKind::BoostedSchwarzschild:
      return 3.0 * mass;
    case ModelKind::KerrBL:
      return 2.0 * (mass + std::sqrt(mass * mass - spin * spin));
  }
  return 0.0;
}

J4 operator+(const J4& a, const J4& b) {
  J4 r;
  r.v = a.v + b.v;
  r.d = a.d + b.d;
  r.h = a.h + b.h;
  return r;
}

J4 operator-(const J4& a, const J4& b) {
  J4 r;
  r.v = a.v - b.v;
  r.d = a.d - b.d;
  r.h = a.h - b.h;
  return r;
}

J4 operator*(const J4& a, const J4& b) {
  J4 r;
  r.v = a.v * b.v;
  r.d = a.v * b.d + b.v * a.d;
  r.h = a.v * b.h + b.v * a.h + a.d * b.d.transpose() + b.d * a.d.transpose();
  return r;
}

J4 operator*(Real c, const J4& a) {
  J4 r;
  r.v = c * a.v;
  r.d = c * a.d;
  r.h = c * a.h;
  return r;
}

J4 operator+(const J4& a, Real c) {
  J4 r = a;
  r.v += c;
  return r;
}

J4 operator-(Real c, const J4& a) { return (-1.0) * a + c; }

J4 compose(const J4& a, Real f, Real fp, Real fpp) {
  J4 r;
  r.v = f;
  r.d = fp * a.d;
  r.h = fp * a.h + fpp * (a.d * a.d.transpose());
  return r;
}

J4 operator/(const J4& a, const J4& b) {
  const Real iv = 1.0 / b.v;
  return a * compose(b, iv, -iv * iv, 2.0 * iv * iv * iv);
}

J4 sqrt(const J4& a) {
  const Real s = std::sqrt(a.v);
  return compose(a, s, 0.5 / s, -0.25 / (s * a.v));
}

J4 sin(const J4& a) { return compose(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
J4 cos(const J4& a) { return compose(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }

namespace {

// component jets for the boosted isotropic family; beta = 0 is Schwarzschild
void boosted_components(const SpacetimeModel& model, const Vec4& q, std::array<std::array<J4, 4>, 4>& c) {
  const Real m = model.mass, beta = model.beta;
  const Real gamma = model.lorentz_gamma();

  const J4 t = J4::variable(0, q[0]);
  const J4 x1 = J4::variable(1, q[1]);
  const J4 x2 = J4::variable(2, q[2]);
  const J4 x3 = J4::variable(3, q[3]);
  const J4 s = gamma * x3 + (beta * gamma) * t;
  const J4 rho = sqrt(x1 * x1 + x2 * x2 + s * s);
  if (rho.v <= 0.5 * m) throw numerical_error("boosted_schwarzschild: inside isotropic horizon");

  // w = m / (2 rho)
  const J4 w = compose(rho, 0.5 * m / rho.v, -0.5 * m / (rho.v * rho.v),
                       m / (rho.v * rho.v * rho.v));
  const J4 one_minus = 1.0 - w;
  const J4 one_plus = w + 1.0;
  const J4 a = (one_minus * one_minus) / (one_plus * one_plus);  // 1/F^2
  const J4 b = (one_plus * one_plus) * (one_plus * one_plus);    // 1/G^2

  const Real g2 = gamma * gamma;
  for (auto& row : c)
    for (auto& e : row) e = J4::constant(0.0);
  c[0][0] = g2 * ((beta * beta) * b - a);
  c[0][3] = (beta * g2) * (b - a);
  c[3][0] = c[0][3];
  c[1][1] = b;
  c[2][2] = b;
  c[3][3] = g2 * (b - (beta * beta) * a);
}

void kerr_components(const SpacetimeModel& model, const Vec4& q, std::array<std::array<J4, 4>, 4>& c) {
  const Real m = model.mass, a = model.spin;
  const J4 r = J4::variable(1, q[1]);
  const J4 th = J4::variable(2, q[2]);
  const J4 ct = cos(th);
  const J4 st = sin(th);
  const J4 sig = r * r + (a * a) * (ct * ct);
  const J4 del = r * r - (2.0 * m) * r + J4::constant(a * a);
  if (del.v <= 0.0) throw numerical_error("kerr: inside ergoregion radius for BL chart");

  for (auto& row : c)
    for (auto& e : row) e = J4::constant(0.0);
  c[0][0] = (2.0 * m) * (r / sig) - J4::constant(1.0);
  c[0][3] = (-2.0 * m * a) * (r * (st * st) / sig);
  c[3][0] = c[0][3];
  c[1][1] = sig / del;
  c[2][2] = sig;
  c[3][3] = (r * r + J4::constant(a * a) + (2.0 * m * a * a) * (r * (st * st) / sig)) * (st * st);
}

}  // namespace

Metric4Jet metric4_jet(const SpacetimeModel& model, const Vec4& q, int order) {
  Metric4Jet out;
  out.has_second = (order >= 2);
  out.g.setZero();
  for (auto& m : out.dg) m.setZero();
  for (auto& row : out.ddg)
    for (auto& m : row) m.setZero();

  if (model.kind == ModelKind::Minkowski) {
    out.g = minkowski_metric();
    return out;
  }

  std::array<std::array<J4, 4>, 4> c;
  if (model.kind == ModelKind::KerrBL) {
    kerr_components(model, q, c);
  } else {
    boosted_components(model, q, c);
  }

  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      out.g(i, j) = c[i][j].v;
      for (int mu = 0; mu < 4; ++mu) {
        out.dg[mu](i, j) = c[i][j].d[mu];
        if (out.has_second) {
          for (int nu = 0; nu < 4; ++nu) out.ddg[mu][nu](i, j) = c[i][j].h(mu, nu);
        }
      }
    }
  }
  return out;
}

Mat4 metric4(const SpacetimeModel& model, const Vec4& q) { return metric4_jet(model, q, 1).g; }

std::array<Mat4, 4> christoffel4(const Metric4Jet& jet) {
  const Mat4 ginv = jet.g.inverse();
  std::array<Mat4, 4> gamma;
  for (auto& m : gamma) m.setZero();
  for (int lam = 0; lam < 4; ++lam) {
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = mu; nu < 4; ++nu) {
        Real s = 0.0;
        for (int rho = 0; rho < 4; ++rho) {
          s += 0.5 * ginv(lam, rho) *
               (jet.dg[mu](rho, nu) + jet.dg[nu](rho, mu) - jet.dg[rho](mu, nu));
        }
        gamma[lam](mu, nu) = s;
        gamma[lam](nu, mu) = s;
      }
    }
  }
  return gamma;
}

Vec3 spherical_to_cartesian(Real r, Real theta, Real phi) {
  return {r * std::sin(theta) * std::sin(phi), r * std::sin(theta) * std::cos(phi),
          r * std::cos(theta)};
}

void cartesian_to_spherical(const Vec3& x, Real* r, Real* theta, Real* phi) {
  *r = x.norm();
  *theta = std::acos(std::clamp(x[2] / *r, -1.0, 1.0));
  *phi = std::atan2(x[0], x[1]);
  if (*phi < 0) *phi += 2.0 * kPi;
}

}  // namespace ql
