// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "ql/s2_metric_ops.hpp"

namespace ql {

namespace {

constexpr int kSym[2][2] = {{0, 1}, {1, 2}};  // (a,b) -> packed symmetric index

}  // namespace

InverseMetric invert_metric(const SymTensorField& s) {
  InverseMetric inv;
  inv.det = s.tt * s.pp - s.tp * s.tp;
  if ((s.tt.minCoeff() <= 0.0) || (inv.det.minCoeff() <= 0.0)) {
    throw numerical_error("metric is not positive definite");
  }
  inv.tt = s.pp / inv.det;
  inv.tp = -s.tp / inv.det;
  inv.pp = s.tt / inv.det;
  return inv;
}

Array area_element(const SymTensorField& s) {
  const Array det = s.tt * s.pp - s.tp * s.tp;
  if (det.minCoeff() <= 0.0) {
    throw numerical_error("metric is not positive definite");
  }
  return det.sqrt();
}

Real integrate(const SymTensorField& sigma, const Array& f) {
  const auto& g = *sigma.grid;
  return (g.weights() * g.csc_theta() * area_element(sigma) * f).sum();
}

Array inner(const InverseMetric& inv, const CovectorField& w, const CovectorField& u) {
  return inv.tt * w.th * u.th + inv.tp * (w.th * u.ph + w.ph * u.th) + inv.pp * w.ph * u.ph;
}

CovectorJet covector_jet(const CovectorField& w) {
  const auto& g = *w.grid;
  const Array csc2 = g.csc_theta().square();

  CovectorJet out;
  out.th = w.th;
  out.ph = w.ph;

  // Cartesian lift w_i = omega_a du^a/dx^i restricted to the sphere
  std::array<ScalarJet, 3> wj;
  for (int i = 0; i < 3; ++i) {
    const Array wi = w.th * g.xhat_d(i, 1, 0) + w.ph * g.xhat_d(i, 0, 1) * csc2;
    wj[i] = scalar_jet1({w.grid, wi});
  }

  for (int a = 0; a < 2; ++a) {
    Array dth = Array::Zero(g.size());
    Array dph = Array::Zero(g.size());
    for (int i = 0; i < 3; ++i) {
      const Array& dwi = (a == 0) ? wj[i].dt : wj[i].dp;
      // d_a omega_b = (d_a w_i) dx^i/du^b + w_i d_a d_b x^i
      dth += dwi * g.xhat_d(i, 1, 0) + wj[i].v * (a == 0 ? g.xhat_d(i, 2, 0) : g.xhat_d(i, 1, 1));
      dph += dwi * g.xhat_d(i, 0, 1) + wj[i].v * (a == 0 ? g.xhat_d(i, 1, 1) : g.xhat_d(i, 0, 2));
    }
    out.dth[a] = std::move(dth);
    out.dph[a] = std::move(dph);
  }
  return out;
}

SymTensorJet sym_tensor_jet(const SymTensorField& s, bool second_order) {
  const auto& g = *s.grid;
  const int n = g.size();
  const Array csc2 = g.csc_theta().square();

  // frame covectors e^a_i (tangential pseudo-inverse of the round embedding)
  std::array<Array, 3> eth, eph;
  for (int i = 0; i < 3; ++i) {
    eth[i] = g.xhat_d(i, 1, 0);
    eph[i] = g.xhat_d(i, 0, 1) * csc2;
  }

  // lifted Cartesian components t_ij (symmetric, 6 entries)
  auto sym6 = [](int i, int j) {
    static const int map[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
    return map[i][j];
  };
  std::array<ScalarJet, 6> tj;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      const Array tij = s.tt * eth[i] * eth[j] + s.tp * (eth[i] * eph[j] + eph[i] * eth[j]) +
                        s.pp * eph[i] * eph[j];
      tj[sym6(i, j)] = second_order ? scalar_jet({s.grid, tij}) : scalar_jet1({s.grid, tij});
    }
  }

  // A^i_a = d_a x^i and its partials
  auto A = [&](int i, int a) -> const Array& {
    return (a == 0) ? g.xhat_d(i, 1, 0) : g.xhat_d(i, 0, 1);
  };
  auto dA = [&](int i, int a, int c) -> const Array& {
    const int kt = (a == 0 ? 1 : 0) + (c == 0 ? 1 : 0);
    return g.xhat_d(i, kt, 2 - kt);
  };
  auto ddA = [&](int i, int a, int c, int d) -> const Array& {
    const int kt = (a == 0 ? 1 : 0) + (c == 0 ? 1 : 0) + (d == 0 ? 1 : 0);
    return g.xhat_d(i, kt, 3 - kt);
  };
  auto tval = [&](int i, int j) -> const Array& { return tj[sym6(i, j)].v; };
  auto tder = [&](int i, int j, int c) -> const Array& {
    return (c == 0) ? tj[sym6(i, j)].dt : tj[sym6(i, j)].dp;
  };
  auto tder2 = [&](int i, int j, int c, int d) -> const Array& {
    auto& jet = tj[sym6(i, j)];
    if (c == 0 && d == 0) return jet.dtt;
    if (c == 1 && d == 1) return jet.dpp;
    return jet.dtp;
  };

  SymTensorJet out;
  out.comp = {s.tt, s.tp, s.pp};
  out.has_second = second_order;

  for (int a = 0; a < 2; ++a) {
    for (int b = a; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        Array acc = Array::Zero(n);
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            acc += tder(i, j, c) * A(i, a) * A(j, b) +
                   tval(i, j) * (dA(i, a, c) * A(j, b) + A(i, a) * dA(j, b, c));
          }
        }
        out.d1[kSym[a][b]][c] = std::move(acc);
      }
    }
  }

  if (second_order) {
    for (int a = 0; a < 2; ++a) {
      for (int b = a; b < 2; ++b) {
        for (int c = 0; c < 2; ++c) {
          for (int d = c; d < 2; ++d) {
            Array acc = Array::Zero(n);
            for (int i = 0; i < 3; ++i) {
              for (int j = 0; j < 3; ++j) {
                acc += tder2(i, j, c, d) * A(i, a) * A(j, b);
                acc += tder(i, j, c) * (dA(i, a, d) * A(j, b) + A(i, a) * dA(j, b, d));
                acc += tder(i, j, d) * (dA(i, a, c) * A(j, b) + A(i, a) * dA(j, b, c));
                acc += tval(i, j) * (ddA(i, a, c, d) * A(j, b) + dA(i, a, c) * dA(j, b, d) +
                                     dA(i, a, d) * dA(j, b, c) + A(i, a) * ddA(j, b, c, d));
              }
            }
            out.d2[kSym[a][b]][kSym[c][d]] = std::move(acc);
          }
        }
      }
    }
  }
  return out;
}

namespace {

Christoffel christoffel_from_jet(const SymTensorJet& jet, const InverseMetric& inv) {
  Christoffel out;
  auto iup = [&](int a, int b) -> const Array& {
    if (a == 0 && b == 0) return inv.tt;
    if (a == 1 && b == 1) return inv.pp;
    return inv.tp;
  };
  // d_c sigma_ab
  auto ds = [&](int c, int a, int b) -> const Array& { return jet.d1[kSym[a][b]][c]; };
  const int n = jet.comp[0].size();
  for (int c = 0; c < 2; ++c) {
    for (int a = 0; a < 2; ++a) {
      for (int b = a; b < 2; ++b) {
        Array acc = Array::Zero(n);
        for (int d = 0; d < 2; ++d) {
          acc += 0.5 * iup(c, d) * (ds(a, d, b) + ds(b, d, a) - ds(d, a, b));
        }
        out.g[c][kSym[a][b]] = std::move(acc);
      }
    }
  }
  return out;
}

}  // namespace

Christoffel christoffel(const SymTensorField& sigma) {
  return christoffel_from_jet(sym_tensor_jet(sigma), invert_metric(sigma));
}

SymTensorField hessian(const SymTensorField& sigma, const ScalarField& f) {
  const auto jf = scalar_jet(f);
  const auto gam = christoffel(sigma);
  SymTensorField h = SymTensorField::zero(f.grid);
  h.tt = jf.dtt - gam.g[0][0] * jf.dt - gam.g[1][0] * jf.dp;
  h.tp = jf.dtp - gam.g[0][1] * jf.dt - gam.g[1][1] * jf.dp;
  h.pp = jf.dpp - gam.g[0][2] * jf.dt - gam.g[1][2] * jf.dp;
  return h;
}

ScalarField laplace_beltrami(const SymTensorField& sigma, const ScalarField& f) {
  const auto inv = invert_metric(sigma);
  const auto h = hessian(sigma, f);
  return {f.grid, inv.tt * h.tt + 2.0 * inv.tp * h.tp + inv.pp * h.pp};
}

ScalarField divergence(const SymTensorField& sigma, const CovectorField& w) {
  const auto inv = invert_metric(sigma);
  const auto jw = covector_jet(w);
  const auto gam = christoffel(sigma);
  // sigma^{ab} (d_a w_b - Gamma^c_ab w_c)
  auto cov = [&](int a, int b) {
    const Array& plain = (b == 0) ? jw.dth[a] : jw.dph[a];
    return Array(plain - gam.g[0][kSym[a][b]] * w.th - gam.g[1][kSym[a][b]] * w.ph);
  };
  return {w.grid,
          inv.tt * cov(0, 0) + inv.tp * (cov(0, 1) + cov(1, 0)) + inv.pp * cov(1, 1)};
}

ScalarField curl_moment(const CovectorField& w) {
  const auto jw = covector_jet(w);
  return {w.grid, (jw.dth[1] - jw.dph[0]) * w.grid->csc_theta()};
}

CovectorField divergence_tensor(const SymTensorField& sigma, const SymTensorField& t) {
  const auto inv = invert_metric(sigma);
  const auto jt = sym_tensor_jet(t);
  const auto gam = christoffel(sigma);
  const int n = sigma.grid->size();

  auto iup = [&](int a, int b) -> const Array& {
    if (a == 0 && b == 0) return inv.tt;
    if (a == 1 && b == 1) return inv.pp;
    return inv.tp;
  };
  // grad_b T_{ca} = d_b T_ca - Gamma^d_{bc} T_da - Gamma^d_{ba} T_cd
  auto cov = [&](int b, int c, int a) {
    Array acc = jt.d1[kSym[c][a]][b] - gam.g[0][kSym[b][c]] * jt.comp[kSym[0][a]] -
                gam.g[1][kSym[b][c]] * jt.comp[kSym[1][a]] -
                gam.g[0][kSym[b][a]] * jt.comp[kSym[c][0]] -
                gam.g[1][kSym[b][a]] * jt.comp[kSym[c][1]];
    return acc;
  };

  CovectorField out = CovectorField::zero(sigma.grid);
  for (int a = 0; a < 2; ++a) {
    Array acc = Array::Zero(n);
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        acc += iup(b, c) * cov(b, c, a);
      }
    }
    if (a == 0) {
      out.th = std::move(acc);
    } else {
      out.ph = std::move(acc);
    }
  }
  return out;
}

ScalarField gauss_curvature(const SymTensorField& sigma) {
  const auto inv = invert_metric(sigma);
  const auto jet = sym_tensor_jet(sigma, /*second_order=*/true);
  const auto gam = christoffel_from_jet(jet, inv);
  const int n = sigma.grid->size();

  auto iup = [&](int a, int b) -> const Array& {
    if (a == 0 && b == 0) return inv.tt;
    if (a == 1 && b == 1) return inv.pp;
    return inv.tp;
  };
  auto ds = [&](int c, int a, int b) -> const Array& { return jet.d1[kSym[a][b]][c]; };
  auto dds = [&](int c, int d, int a, int b) -> const Array& {
    return jet.d2[kSym[a][b]][kSym[c][d]];
  };

  // d_e sigma^{cd} = -sigma^{cf} sigma^{dg} d_e sigma_fg
  auto dinv = [&](int e, int c, int d) {
    Array acc = Array::Zero(n);
    for (int f = 0; f < 2; ++f) {
      for (int g = 0; g < 2; ++g) {
        acc -= iup(c, f) * iup(d, g) * ds(e, f, g);
      }
    }
    return acc;
  };

  // d_e Gamma^c_{ab}
  auto dgamma = [&](int e, int c, int a, int b) {
    Array acc = Array::Zero(n);
    for (int d = 0; d < 2; ++d) {
      acc += 0.5 * dinv(e, c, d) * (ds(a, d, b) + ds(b, d, a) - ds(d, a, b));
      acc += 0.5 * iup(c, d) * (dds(e, a, d, b) + dds(e, b, d, a) - dds(e, d, a, b));
    }
    return acc;
  };

  Array twok = Array::Zero(n);
  for (int b = 0; b < 2; ++b) {
    for (int d = 0; d < 2; ++d) {
      Array term = Array::Zero(n);
      for (int a = 0; a < 2; ++a) {
        term += dgamma(a, a, b, d) - dgamma(d, a, b, a);
        for (int f = 0; f < 2; ++f) {
          term += gam.g[a][kSym[a][f]] * gam.g[f][kSym[d][b]] -
                  gam.g[a][kSym[d][f]] * gam.g[f][kSym[a][b]];
        }
      }
      twok += iup(b, d) * term;
    }
  }
  return {sigma.grid, 0.5 * twok};
}

}  // namespace ql
