// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <array>

#include "ql/types.hpp"

namespace ql {

enum class ModelKind { Minkowski, SchwarzschildIsotropic, BoostedSchwarzschild, KerrBL };

/// Exact analytic spacetime models in geometric units.
struct SpacetimeModel {
  ModelKind kind = ModelKind::Minkowski;
  Real mass = 0.0;  // M or m
  Real beta = 0.0;  // boost velocity, |beta| < 1
  Real spin = 0.0;  // Kerr a, |a| < m

  static SpacetimeModel minkowski() { return {}; }
  static SpacetimeModel schwarzschild(Real m);
  static SpacetimeModel boosted_schwarzschild(Real m, Real beta);
  static SpacetimeModel kerr(Real m, Real a);

  /// Natural chart: (t, x1, x2, x3) for the Cartesian-sliced models,
  /// Boyer-Lindquist (t, r, theta, phi) for Kerr.
  bool cartesian_chart() const { return kind != ModelKind::KerrBL; }

  /// Smallest radius at which samples are accepted.
  Real min_radius() const;

  Real lorentz_gamma() const { return 1.0 / std::sqrt(1.0 - beta * beta); }
};

/// Second-order forward-mode jet in the four chart coordinates.
struct J4 {
  Real v = 0.0;
  Vec4 d = Vec4::Zero();
  Mat4 h = Mat4::Zero();

  static J4 constant(Real c) {
    J4 j;
    j.v = c;
    return j;
  }
  static J4 variable(int i, Real value) {
    J4 j;
    j.v = value;
    j.d[i] = 1.0;
    return j;
  }
};

J4 operator+(const J4& a, const J4& b);
J4 operator-(const J4& a, const J4& b);
J4 operator*(const J4& a, const J4& b);
J4 operator*(Real c, const J4& a);
J4 operator+(const J4& a, Real c);
J4 operator-(Real c, const J4& a);
J4 operator/(const J4& a, const J4& b);
/// Univariate chain rule: f(a) given f, f', f'' at a.v.
J4 compose(const J4& a, Real f, Real fp, Real fpp);
J4 sqrt(const J4& a);
J4 sin(const J4& a);
J4 cos(const J4& a);

/// Metric components with first and second chart derivatives at a point.
struct Metric4Jet {
  Mat4 g;
  std::array<Mat4, 4> dg;
  std::array<std::array<Mat4, 4>, 4> ddg;
  bool has_second = false;
};

/// q is a point in the model chart. order is 1 or 2.
Metric4Jet metric4_jet(const SpacetimeModel& model, const Vec4& q, int order = 1);

Mat4 metric4(const SpacetimeModel& model, const Vec4& q);

/// Christoffel symbols Gamma^lambda_{mu nu}; result[lambda](mu, nu).
std::array<Mat4, 4> christoffel4(const Metric4Jet& jet);

/// Spherical-to-Cartesian convention used throughout:
/// x1 = r sin(theta) sin(phi), x2 = r sin(theta) cos(phi), x3 = r cos(theta).
Vec3 spherical_to_cartesian(Real r, Real theta, Real phi);
void cartesian_to_spherical(const Vec3& x, Real* r, Real* theta, Real* phi);

}  // namespace ql
