// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <random>

#include "ql/s2_metric_ops.hpp"

namespace ql::testing {

inline std::mt19937_64 make_rng(unsigned seed = 0xC0FFEE) { return std::mt19937_64(seed); }

inline Real uniform(std::mt19937_64& rng, Real lo = -1.0, Real hi = 1.0) {
  return std::uniform_real_distribution<Real>(lo, hi)(rng);
}

/// Single real harmonic basis function as a field. kind: 0 = m0/cos, 1 = sin.
inline ScalarField harmonic(const GridPtr& g, int l, int m, int kind = 0) {
  Coeffs a;
  a.lmax = g->lmax();
  a.c.setZero(Coeffs::size(a.lmax));
  if (m == 0) {
    a.c[Coeffs::index_m0(l)] = 1.0;
  } else if (kind == 0) {
    a.c[Coeffs::index_cos(l, m, a.lmax)] = 1.0;
  } else {
    a.c[Coeffs::index_sin(l, m, a.lmax)] = 1.0;
  }
  return {g, g->synthesize(a)};
}

/// Random band-limited scalar with degrees <= band.
inline ScalarField random_scalar(const GridPtr& g, std::mt19937_64& rng, int band,
                                 Real amp = 1.0) {
  Coeffs a;
  a.lmax = g->lmax();
  a.c.setZero(Coeffs::size(a.lmax));
  const int b = std::min(band, a.lmax);
  for (int l = 0; l <= b; ++l) {
    a.c[Coeffs::index_m0(l)] = amp * uniform(rng);
    for (int m = 1; m <= l; ++m) {
      a.c[Coeffs::index_cos(l, m, a.lmax)] = amp * uniform(rng);
      a.c[Coeffs::index_sin(l, m, a.lmax)] = amp * uniform(rng);
    }
  }
  return {g, g->synthesize(a)};
}

/// Coexact one-form built from a scalar potential.
inline CovectorField cogradient(const ScalarField& f) {
  const auto df = gradient(f);
  const auto& g = *f.grid;
  // (eps_a{}^b d_b f): theta comp = d_phi f / sin, phi comp = -sin d_theta f
  return {f.grid, df.ph * g.csc_theta(), -df.th * g.sin_theta()};
}

/// Random smooth one-form from exact + coexact potentials.
inline CovectorField random_covector(const GridPtr& g, std::mt19937_64& rng, int band,
                                     Real amp = 1.0) {
  const auto f = random_scalar(g, rng, band, amp);
  const auto h = random_scalar(g, rng, band, amp);
  const auto df = gradient(f);
  const auto cg = cogradient(h);
  return {g, df.th + cg.th, df.ph + cg.ph};
}

/// Restriction of an ambient constant-coefficient polynomial symmetric tensor
/// s_ij(x) to the sphere; smooth and band-limited by construction.
inline SymTensorField random_sym_tensor(const GridPtr& g, std::mt19937_64& rng,
                                        Real amp = 1.0) {
  const int n = g->size();
  std::array<Array, 6> s;  // s_ij with constant + linear coefficients
  auto sym6 = [](int i, int j) {
    static const int map[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
    return map[i][j];
  };
  for (auto& a : s) a = Array::Zero(n);
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      Array val = Array::Constant(n, amp * uniform(rng));
      for (int k = 0; k < 3; ++k) {
        val += amp * uniform(rng) * g->xhat(k);
      }
      s[sym6(i, j)] = val;
    }
  }
  SymTensorField out = SymTensorField::zero(g);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Array& sij = s[sym6(i, j)];
      out.tt += sij * g->xhat_d(i, 1, 0) * g->xhat_d(j, 1, 0);
      out.tp += sij * g->xhat_d(i, 1, 0) * g->xhat_d(j, 0, 1);
      out.pp += sij * g->xhat_d(i, 0, 1) * g->xhat_d(j, 0, 1);
    }
  }
  return out;
}

inline Real max_abs(const Array& a) { return a.abs().maxCoeff(); }

}  // namespace ql::testing
