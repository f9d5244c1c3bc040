// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <doctest.h>

#include "ql/fitting.hpp"
#include "ql/surface_sampling.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace ql;
using namespace ql::testing;

TEST_SUITE_BEGIN("spacetime_samplers");

TEST_CASE("model parameter validation") {
  CHECK_THROWS_AS(SpacetimeModel::schwarzschild(-1.0), config_error);
  CHECK_THROWS_AS(SpacetimeModel::boosted_schwarzschild(1.0, 1.2), config_error);
  CHECK_THROWS_AS(SpacetimeModel::kerr(1.0, 1.5), config_error);
}

TEST_CASE("analytic metric jets match finite differences") {
  const Vec4 q(0.7, 4.0, -6.5, 9.0);
  {
    const auto chk = check_metric_jet(SpacetimeModel::schwarzschild(1.0), q);
    CHECK(chk.first < 1e-9);
    CHECK(chk.second < 1e-8);
  }
  {
    const auto chk = check_metric_jet(SpacetimeModel::boosted_schwarzschild(1.0, 0.5), q);
    CHECK(chk.first < 1e-9);
    CHECK(chk.second < 1e-8);
  }
  {
    // Kerr chart point (t, r, theta, phi)
    const Vec4 qk(0.0, 11.0, 1.1, 2.3);
    const auto chk = check_metric_jet(SpacetimeModel::kerr(1.0, 0.5), qk, 1e-3);
    CHECK(chk.first < 1e-8);
    CHECK(chk.second < 1e-7);
  }
}

TEST_CASE("initial data closed forms") {
  const auto mink = SpacetimeModel::minkowski();
  const auto s0 = sample_initial_data(mink, 0.3, Vec3(1.0, 2.0, 3.0));
  CHECK((s0.g - Mat3::Identity()).norm() == 0.0);
  CHECK(s0.k.norm() == 0.0);

  const Real rho = 7.0;
  const auto schw = SpacetimeModel::schwarzschild(1.0);
  const auto s1 = sample_initial_data(schw, 0.0, Vec3(rho, 0.0, 0.0));
  const Real u4 = std::pow(1.0 + 0.5 / rho, 4);
  CHECK((s1.g - u4 * Mat3::Identity()).norm() < 1e-14 * u4);
  CHECK(s1.k.norm() < 1e-15);

  // boosted g_33 = gamma^2 (-beta^2/F^2 + 1/G^2) at rho(p, t)
  const Real beta = 0.5;
  const auto boosted = SpacetimeModel::boosted_schwarzschild(1.0, beta);
  const Real t = 0.8;
  const Vec3 p(2.0, 3.0, 6.0);
  const Real gamma = 1.0 / std::sqrt(1.0 - beta * beta);
  const Real s = gamma * p[2] + beta * gamma * t;
  const Real rr = std::sqrt(p[0] * p[0] + p[1] * p[1] + s * s);
  const Real w = 0.5 / rr;
  const Real f2inv = std::pow((1.0 - w) / (1.0 + w), 2);
  const Real g2inv = std::pow(1.0 + w, 4);
  const auto s2 = sample_initial_data(boosted, t, p);
  CHECK(s2.g(2, 2) ==
        doctest::Approx(gamma * gamma * (-beta * beta * f2inv + g2inv)).epsilon(1e-13));

  CHECK_THROWS_AS(sample_initial_data(schw, 0.0, Vec3(1.0, 0.0, 0.0)), numerical_error);
}

TEST_CASE("boosted slice data depends on time only through rho") {
  const Real beta = 0.4, t = 1.7;
  const auto model = SpacetimeModel::boosted_schwarzschild(1.0, beta);
  const Vec3 p(3.0, -2.0, 8.0);
  const Vec3 shifted = p + Vec3(0.0, 0.0, beta * t);
  const auto a = sample_initial_data(model, t, p);
  const auto b = sample_initial_data(model, 0.0, shifted);
  CHECK((a.g - b.g).norm() < 1e-14);
  CHECK((a.k - b.k).norm() < 1e-14);
  for (int m = 0; m < 3; ++m) CHECK((a.dg[m] - b.dg[m]).norm() < 1e-14);
}

TEST_CASE("samplers are deterministic") {
  const auto model = SpacetimeModel::kerr(1.0, 0.7);
  const Vec3 p(5.0, 6.0, -7.0);
  const auto a = sample_initial_data(model, 0.0, p);
  const auto b = sample_initial_data(model, 0.0, p);
  CHECK(a.g == b.g);
  CHECK(a.k == b.k);
}

TEST_CASE("conjugate momentum identity") {
  auto rng = make_rng(41);
  const auto model = SpacetimeModel::boosted_schwarzschild(1.0, 0.3);
  for (int trial = 0; trial < 5; ++trial) {
    Vec3 p(uniform(rng, 5.0, 20.0), uniform(rng, 5.0, 20.0), uniform(rng, 5.0, 20.0));
    const auto s = sample_initial_data(model, 0.0, p);
    const Mat3 pi = conjugate_momentum(s.g, s.k);
    const Real trk = (s.g.inverse() * s.k).trace();
    CHECK((pi - (s.k - trk * s.g)).norm() < 1e-14);
  }
}

TEST_CASE("vacuum constraints vanish on exact models") {
  // pinned examples
  {
    const auto res = constraint_residual(SpacetimeModel::minkowski(), 0.0, Vec3(1, 2, 3));
    CHECK(res.hamiltonian == 0.0);
    CHECK(res.momentum_norm == 0.0);
  }
  {
    const auto res =
        constraint_residual(SpacetimeModel::schwarzschild(1.0), 0.0, Vec3(10.0, 0.0, 0.0));
    CHECK(std::abs(res.hamiltonian) < 1e-9);
    CHECK(res.momentum_norm < 1e-9);
  }
  {
    const Vec3 p = spherical_to_cartesian(10.0, 1.2, 0.4);
    const auto res = constraint_residual(SpacetimeModel::kerr(1.0, 0.5), 0.0, p);
    CHECK(std::abs(res.hamiltonian) < 1e-8);
    CHECK(res.momentum_norm < 1e-8);
  }

  // random exterior points for every non-flat model
  auto rng = make_rng(4242);
  const std::vector<SpacetimeModel> models = {SpacetimeModel::schwarzschild(1.0),
                                              SpacetimeModel::boosted_schwarzschild(1.0, 0.5),
                                              SpacetimeModel::kerr(1.0, 0.5)};
  for (const auto& model : models) {
    Real worst_h = 0.0, worst_m = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const Real r = uniform(rng, 8.0, 60.0);
      const Real ct = uniform(rng, -0.99, 0.99);
      const Real ph = uniform(rng, 0.0, 2.0 * kPi);
      const Vec3 p = spherical_to_cartesian(r, std::acos(ct), ph);
      const auto res = constraint_residual(model, 0.0, p);
      worst_h = std::max(worst_h, std::abs(res.hamiltonian));
      worst_m = std::max(worst_m, res.momentum_norm);
    }
    CHECK(worst_h < 1e-8);
    CHECK(worst_m < 1e-8);
  }
}

TEST_CASE("coordinate sphere data: Minkowski and Schwarzschild") {
  auto grid = SphereGrid::create(12);
  {
    const auto sd =
        coordinate_sphere_surface_data(SpacetimeModel::minkowski(), 0.0, 2.5, grid);
    CHECK(max_abs(sd.sigma.tt - 6.25) < 1e-12);
    CHECK(max_abs(sd.sigma.tp) < 1e-12);
    CHECK(max_abs(sd.sigma.pp - 6.25 * grid->sin_theta().square()) < 1e-12);
    CHECK(max_abs(sd.Hnorm.v - 0.8) < 1e-12);
    CHECK(max_abs(sd.alphaH.th) < 1e-12);
    CHECK(max_abs(sd.alphaH.ph) < 1e-12);
  }
  {
    const Real m = 1.0, r = 8.0;
    const auto sd =
        coordinate_sphere_surface_data(SpacetimeModel::schwarzschild(m), 0.0, r, grid);
    const Real expect = schwarzschild_isotropic_sphere_hnorm(m, r);
    CHECK(max_abs(sd.Hnorm.v - expect) < 1e-11);
    CHECK(max_abs(sd.alphaH.th) < 1e-11);
    CHECK(max_abs(sd.alphaH.ph) < 1e-11);
  }
}

TEST_CASE("kerr slice surfaces") {
  auto grid = SphereGrid::create(12);
  const Real m = 1.0, a = 0.5, r = 12.0;

  // f = 0 reduces to the coordinate sphere of the t=0 slice
  const auto f0 = ScalarField::zero(grid);
  const auto sd_slice = kerr_slice_surface_data(m, a, r, f0, grid);
  const auto sd_sphere =
      coordinate_sphere_surface_data(SpacetimeModel::kerr(m, a), 0.0, r, grid);
  CHECK(max_abs(sd_slice.sigma.tt - sd_sphere.sigma.tt) < 1e-11);
  CHECK(max_abs(sd_slice.sigma.pp - sd_sphere.sigma.pp) < 1e-11);
  CHECK(max_abs(sd_slice.Hnorm.v - sd_sphere.Hnorm.v) < 1e-11);
  CHECK(max_abs(sd_slice.alphaH.ph - sd_sphere.alphaH.ph) < 1e-10);

  // a = 0 with constant f: Schwarzschild areal closed form
  const auto fc = ScalarField::constant(grid, 3.0);
  const auto sd_schw = kerr_slice_surface_data(m, 1e-12, r, fc, grid);
  CHECK(max_abs(sd_schw.Hnorm.v - schwarzschild_areal_sphere_hnorm(m, r)) < 1e-10);
}

TEST_CASE("constraint divergence expansion decay") {
  auto grid = SphereGrid::create(12);
  const auto model = SpacetimeModel::boosted_schwarzschild(1.0, 0.3);
  const auto radii = log_spaced(100.0, 100000.0, 8);
  const auto res = constraint_divergence_check(model, radii, grid);
  CHECK(res.exact_divergence_sup < 1e-10);
  CHECK(res.radial_exponent == doctest::Approx(-4.0).epsilon(0.05));
  CHECK(res.angular_exponent == doctest::Approx(-3.0).epsilon(0.07));
  CHECK(res.pi_identity_sup < 1e-6);

  // Minkowski: both sides are identically zero
  const auto res0 =
      constraint_divergence_check(SpacetimeModel::minkowski(), {10.0, 100.0}, grid);
  for (const Real e : res0.radial_error) CHECK(e < 1e-14);
  for (const Real e : res0.angular_error) CHECK(e < 1e-14);
}

TEST_SUITE_END();
