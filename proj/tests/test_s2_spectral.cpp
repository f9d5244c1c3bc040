// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <doctest.h>

#include "test_util.hpp"

using namespace ql;
using namespace ql::testing;

TEST_SUITE_BEGIN("s2_spectral");

TEST_CASE("grid quadrature basics") {
  auto g8 = SphereGrid::create(8);
  CHECK(g8->size() >= 9 * 17);
  CHECK(integrate(*g8, Array::Ones(g8->size())) == doctest::Approx(kFourPi).epsilon(1e-13));
  CHECK(std::abs(integrate(*g8, g8->xhat(0))) < 1e-13);

  auto g16 = SphereGrid::create(16);
  CHECK(integrate(*g16, g16->xhat(2).square()) ==
        doctest::Approx(kFourPi / 3.0).epsilon(1e-12));

  CHECK_THROWS_AS(SphereGrid::create(3), config_error);
}

TEST_CASE("quadrature integrates harmonic products exactly") {
  for (int lmax : {8, 12}) {
    auto g = SphereGrid::create(lmax);
    // collect the full basis once
    std::vector<Array> basis;
    std::vector<int> degree;
    for (int l = 0; l <= lmax; ++l) {
      basis.push_back(harmonic(g, l, 0).v);
      degree.push_back(l);
      for (int m = 1; m <= l; ++m) {
        basis.push_back(harmonic(g, l, m, 0).v);
        degree.push_back(l);
        basis.push_back(harmonic(g, l, m, 1).v);
        degree.push_back(l);
      }
    }
    Real worst = 0.0;
    for (size_t i = 0; i < basis.size(); ++i) {
      for (size_t j = i; j < basis.size(); ++j) {
        if (degree[i] + degree[j] > 2 * lmax) continue;
        const Real val = integrate(*g, basis[i] * basis[j]);
        const Real expect = (i == j) ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(val - expect));
      }
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("transform round trip") {
  auto g = SphereGrid::create(10);
  auto rng = make_rng(7);
  const auto f = random_scalar(g, rng, 10);
  const auto back = g->synthesize(g->analyze(f.v));
  CHECK(max_abs(back - f.v) < 1e-12);
}

TEST_CASE("round Laplacian eigenvalues") {
  auto g = SphereGrid::create(8);
  for (int i = 0; i < 3; ++i) {
    const ScalarField xi{g, g->xhat(i)};
    CHECK(max_abs(laplacian_round(xi).v + 2.0 * xi.v) < 1e-12);
  }
  const auto c = ScalarField::constant(g, 2.5);
  CHECK(max_abs(laplacian_round(c).v) < 1e-12);
  const auto y20 = harmonic(g, 2, 0);
  CHECK(max_abs(laplacian_round(y20).v + 6.0 * y20.v) < 1e-12);
}

TEST_CASE("helmholtz solver") {
  auto g = SphereGrid::create(8);

  const auto y20 = harmonic(g, 2, 0);
  auto r1 = solve_helmholtz_plus2(y20);
  CHECK(max_abs(r1.u.v + 0.25 * y20.v) < 1e-12);
  CHECK(r1.l1_projection.norm() < 1e-13);

  const ScalarField x3{g, g->xhat(2)};
  auto r2 = solve_helmholtz_plus2(x3);
  CHECK(max_abs(r2.u.v) < 1e-13);
  CHECK(r2.l1_projection[0] == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(r2.l1_projection[2] == doctest::Approx(kFourPi / 3.0).epsilon(1e-12));

  auto r3 = solve_helmholtz_plus2(ScalarField::zero(g));
  CHECK(max_abs(r3.u.v) == 0.0);

  // apply (lap + 2) and recover the non-l=1 part of a random rhs
  auto rng = make_rng(11);
  const auto rhs = random_scalar(g, rng, 6);
  auto r4 = solve_helmholtz_plus2(rhs);
  const Array applied = laplacian_round(r4.u).v + 2.0 * r4.u.v;
  const auto expected = filter_degrees(rhs, [](int l) { return l != 1; });
  CHECK(max_abs(applied - expected.v) < 1e-10);
}

TEST_CASE("operators are linear") {
  auto g = SphereGrid::create(10);
  auto rng = make_rng(3);
  const auto f = random_scalar(g, rng, 8);
  const auto h = random_scalar(g, rng, 8);
  const Real a = uniform(rng), b = uniform(rng);
  const ScalarField mix{g, a * f.v + b * h.v};

  CHECK(max_abs(laplacian_round(mix).v - a * laplacian_round(f).v -
                b * laplacian_round(h).v) < 1e-12);

  const auto sigma = SymTensorField::round(g, 1.0);
  CHECK(max_abs(laplace_beltrami(sigma, mix).v - a * laplace_beltrami(sigma, f).v -
                b * laplace_beltrami(sigma, h).v) < 1e-11);
}

TEST_CASE("general metric operators on conformal round metrics") {
  auto g = SphereGrid::create(12);
  auto rng = make_rng(5);
  const auto f = random_scalar(g, rng, 8);
  const Real r2 = 7.3;
  const auto sigma = SymTensorField::round(g, r2);

  CHECK(max_abs(laplace_beltrami(sigma, f).v - laplacian_round(f).v / r2) < 1e-11);

  const auto h = random_scalar(g, rng, 8);
  const auto grad_h = gradient(h);
  const auto div = divergence(SymTensorField::round(g), grad_h);
  CHECK(max_abs(div.v - laplacian_round(h).v) < 1e-11);

  CHECK(max_abs(curl_moment(grad_h).v) < 1e-11);

  // divergence integrates to zero against the metric measure
  auto rng2 = make_rng(17);
  const auto w = random_covector(g, rng2, 8);
  SymTensorField bumpy = random_sym_tensor(g, rng2, 0.05);
  bumpy.tt += sigma.tt;
  bumpy.tp += sigma.tp;
  bumpy.pp += sigma.pp;
  CHECK(std::abs(integrate(bumpy, divergence(bumpy, w).v)) < 1e-10);
}

TEST_CASE("gauss curvature of round and perturbed spheres") {
  auto g = SphereGrid::create(16);
  const Real r = 3.0;
  const auto round = SymTensorField::round(g, r * r);
  const auto k = gauss_curvature(round);
  CHECK(max_abs(k.v - 1.0 / (r * r)) < 1e-10);

  // Gauss-Bonnet on a smooth non-round metric
  auto rng = make_rng(23);
  SymTensorField sigma = random_sym_tensor(g, rng, 0.08);
  sigma.tt += round.tt;
  sigma.tp += round.tp;
  sigma.pp += round.pp;
  const auto ks = gauss_curvature(sigma);
  CHECK(integrate(sigma, ks.v) == doctest::Approx(kFourPi).epsilon(1e-8 / kFourPi));
}

TEST_CASE("gauss curvature transforms as a scalar under rotation") {
  auto g = SphereGrid::create(16);
  auto rng = make_rng(29);

  // ambient symmetric tensor t(x) = delta + eps * sym(v x^T + x v^T) type
  const Real eps = 0.03;
  Mat3 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c(i, j) = uniform(rng);
  const Mat3 csym = 0.5 * (c + c.transpose());

  // rotation by a fixed axis-angle
  const Vec3 axis = Vec3(0.3, -1.1, 0.7).normalized();
  const Mat3 rot = Eigen::AngleAxisd(0.83, axis).toRotationMatrix();

  // sigma_ab = t_ij dx^i dx^j restricted to the sphere, t = I + eps*csym*x1
  auto make_metric = [&](const Mat3& coeff) {
    const int n = g->size();
    SymTensorField out = SymTensorField::zero(g);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        Array tij = Array::Constant(n, (i == j) ? 1.0 : 0.0) + eps * coeff(i, j) * g->xhat(0);
        out.tt += tij * g->xhat_d(i, 1, 0) * g->xhat_d(j, 1, 0);
        out.tp += tij * g->xhat_d(i, 1, 0) * g->xhat_d(j, 0, 1);
        out.pp += tij * g->xhat_d(i, 0, 1) * g->xhat_d(j, 0, 1);
      }
    }
    return out;
  };

  // pulled-back metric under the rotation: t'(x) = R^T t(R x) R, linear part
  // (e . R x) with rotated coefficient matrix
  const auto sigma = make_metric(csym);
  const auto k = gauss_curvature(sigma);
  const auto k_coeffs = g->analyze(k.v);

  // rotated-sample metric: evaluate ambient tensor at rotated points
  SymTensorField sigma_rot = SymTensorField::zero(g);
  {
    const int n = g->size();
    for (int node = 0; node < n; ++node) {
      Vec3 x(g->xhat(0)[node], g->xhat(1)[node], g->xhat(2)[node]);
      const Vec3 rx = rot * x;
      Mat3 t = Mat3::Identity() + eps * csym * rx[0];
      const Mat3 tp = rot.transpose() * t * rot;
      Vec3 et(g->xhat_d(0, 1, 0)[node], g->xhat_d(1, 1, 0)[node], g->xhat_d(2, 1, 0)[node]);
      Vec3 ep(g->xhat_d(0, 0, 1)[node], g->xhat_d(1, 0, 1)[node], g->xhat_d(2, 0, 1)[node]);
      sigma_rot.tt[node] = et.dot(tp * et);
      sigma_rot.tp[node] = et.dot(tp * ep);
      sigma_rot.pp[node] = ep.dot(tp * ep);
    }
  }
  const auto k_rot = gauss_curvature(sigma_rot);

  // K(rot-pullback sigma)(p) must equal K(sigma)(rot p)
  Real worst = 0.0;
  for (int i = 0; i < g->ntheta(); i += 2) {
    for (int j = 0; j < g->nphi(); j += 3) {
      const int node = g->node(i, j);
      Vec3 x(g->xhat(0)[node], g->xhat(1)[node], g->xhat(2)[node]);
      const Vec3 rx = rot * x;
      const Real theta = std::acos(std::clamp(rx[2], -1.0, 1.0));
      const Real phi = std::atan2(rx[0], rx[1]);  // x1 = sin sin, x2 = sin cos
      const Real expected = g->evaluate_at(k_coeffs, theta, phi);
      worst = std::max(worst, std::abs(k_rot.v[node] - expected));
    }
  }
  CHECK(worst < 1e-9);
}

TEST_SUITE_END();
