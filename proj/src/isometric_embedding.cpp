// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "ql/isometric_embedding.hpp"

#include <iostream>
#include <map>
#include <mutex>

namespace ql {

namespace {

// round-sphere covariant derivative of a symmetric tensor, d_b T_{ca} plus
// Christoffel terms, assembled from the lifted jet
std::array<std::array<Array, 3>, 2> round_cov_deriv(const SymTensorField& t) {
  const auto jet = sym_tensor_jet(t);
  const auto gam = christoffel(SymTensorField::round(t.grid));
  constexpr int kSym[2][2] = {{0, 1}, {1, 2}};
  std::array<std::array<Array, 3>, 2> out;  // out[b][ca] = grad_b t_{ca}
  for (int b = 0; b < 2; ++b) {
    for (int c = 0; c < 2; ++c) {
      for (int a = c; a < 2; ++a) {
        Array acc = jet.d1[kSym[c][a]][b];
        for (int d = 0; d < 2; ++d) {
          acc -= gam.g[d][kSym[b][c]] * jet.comp[kSym[d][a]] +
                 gam.g[d][kSym[b][a]] * jet.comp[kSym[c][d]];
        }
        out[b][kSym[c][a]] = std::move(acc);
      }
    }
  }
  return out;
}

}  // namespace

LinearizedSolution solve_linearized(const SymTensorField& sigma1) {
  const auto& grid = sigma1.grid;
  const Array& s = grid->sin_theta();

  // q_c = -1/2 eps^{ad} grad_d sigma1_{ac}
  const auto cov = round_cov_deriv(sigma1);
  const Array q_th = -0.5 * (cov[1][0] - cov[0][1]) / s;  // (grad_phi s_tt - grad_th s_pt)/s
  const Array q_ph = -0.5 * (cov[1][1] - cov[0][2]) / s;

  // inhomogeneous part of p: p_th = q_ph / s, p_ph = -s q_th
  CovectorField p_q{grid, q_ph / s, -s * q_th};

  LinearizedSolution sol;
  const auto curl_pq = curl_moment(p_q);
  auto helm = solve_helmholtz_plus2(curl_pq);
  sol.f = helm.u;
  sol.l1_solvability = helm.l1_projection;

  // p from f:  p_th = (q - grad f)_ph / s,  p_ph = -s (q - grad f)_th
  const auto df = gradient(sol.f);
  sol.p = CovectorField{grid, (q_ph - df.ph) / s, -s * (q_th - df.th)};

  // gradient of Y^j per the ansatz, then reconstruction through the Laplacian
  const auto round = SymTensorField::round(grid);
  Real curl_res = 0.0;
  for (int j = 0; j < 3; ++j) {
    const Array& xj = grid->xhat(j);
    const Array xj_th = grid->xhat_d(j, 1, 0);
    const Array xj_ph = grid->xhat_d(j, 0, 1);
    // raised-index second factor: sigma~^{bc} grad_c X~^j
    const Array up_th = xj_th;            // theta component
    const Array up_ph = xj_ph / (s * s);  // phi component
    CovectorField w{grid,
                    sol.p.th * xj + 0.5 * sigma1.tt * up_th +
                        (0.5 * sigma1.tp + sol.f.v * s) * up_ph,
                    sol.p.ph * xj + (0.5 * sigma1.tp - sol.f.v * s) * up_th +
                        0.5 * sigma1.pp * up_ph};
    curl_res = std::max(curl_res, curl_moment(w).v.abs().maxCoeff());
    const auto div_w = divergence(round, w);
    sol.y[j] = inv_laplacian_round(div_w);
  }
  sol.curl_residual = curl_res;

  const Real scale = std::max({sigma1.tt.abs().maxCoeff(), sigma1.tp.abs().maxCoeff(),
                               sigma1.pp.abs().maxCoeff(), 1e-30});
  if (curl_res > 1e-5 * std::max(scale, 1.0) * grid->lmax() * grid->lmax()) {
    throw numerical_error("solve_linearized: gradient reconstruction is not integrable");
  }

  // rigid-motion gauge: zero means, zero antisymmetric first moments
  for (int j = 0; j < 3; ++j) {
    sol.y[j].v -= integrate(*grid, sol.y[j].v) / kFourPi;
  }
  Mat3 moment = Mat3::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      moment(i, j) = integrate(*grid, grid->xhat(i) * sol.y[j].v);
    }
  }
  const Mat3 anti = 0.5 * (moment - moment.transpose());
  Vec3 omega;
  omega[0] = anti(1, 2);
  omega[1] = anti(2, 0);
  omega[2] = anti(0, 1);
  omega *= -3.0 / kFourPi;
  // y -> y + omega x X~
  for (int j = 0; j < 3; ++j) {
    const int a = (j + 1) % 3, b = (j + 2) % 3;
    sol.y[j].v += omega[a] * grid->xhat(b) - omega[b] * grid->xhat(a);
  }

  // record the linearized isometry defect
  Real iso = 0.0;
  {
    SymTensorField resid = SymTensorField::zero(grid);
    resid.tt = -sigma1.tt;
    resid.tp = -sigma1.tp;
    resid.pp = -sigma1.pp;
    for (int j = 0; j < 3; ++j) {
      const auto yj = scalar_jet1(sol.y[j]);
      resid.tt += 2.0 * grid->xhat_d(j, 1, 0) * yj.dt;
      resid.tp += grid->xhat_d(j, 1, 0) * yj.dp + grid->xhat_d(j, 0, 1) * yj.dt;
      resid.pp += 2.0 * grid->xhat_d(j, 0, 1) * yj.dp;
    }
    iso = std::max({resid.tt.abs().maxCoeff(), resid.tp.abs().maxCoeff(),
                    resid.pp.abs().maxCoeff()});
  }
  sol.iso_residual = iso;
  return sol;
}

ScalarField h0_minus2(const LinearizedSolution& sol, const SymTensorField& sigma1) {
  const auto& grid = sigma1.grid;
  Array acc = Array::Zero(grid->size());
  for (int j = 0; j < 3; ++j) {
    acc -= grid->xhat(j) * laplacian_round(sol.y[j]).v;
  }
  const Array trace = sigma1.tt + sigma1.pp / grid->sin_theta().square();
  return {grid, acc - trace};
}

ScalarField h0_minus2(const SymTensorField& sigma1) {
  return h0_minus2(solve_linearized(sigma1), sigma1);
}

std::array<ScalarField, 3> round_embedding(const GridPtr& grid, Real r) {
  return {ScalarField{grid, r * grid->xhat(0)}, ScalarField{grid, r * grid->xhat(1)},
          ScalarField{grid, r * grid->xhat(2)}};
}

namespace {

// Per-grid linear algebra for the embedding solver: value/derivative tables of
// the real harmonic basis and the factored round-sphere normal matrix.
struct EmbedTables {
  Eigen::MatrixXd bt, bp;  // N x K tables of d_theta B_k, d_phi B_k
  Eigen::MatrixXd b;       // N x K values
  Eigen::MatrixXd gauge;   // 6 x 3K rigid-motion functionals
  Eigen::LDLT<Eigen::MatrixXd> normal;  // of the gauge-augmented J^T J at the unit sphere
};

// gauge-augmented J^T J of the isometry residual at tangent fields (xt, xp)
Eigen::MatrixXd assemble_normal(const SphereGrid& grid, const EmbedTables& tab,
                                const std::array<Array, 3>& xt,
                                const std::array<Array, 3>& xp) {
  const int n = grid.size();
  const int k = Coeffs::size(grid.lmax());
  const Array w = grid.weights().sqrt();
  const Array& s = grid.sin_theta();
  Eigen::MatrixXd mtt(n, 3 * k), mtp(n, 3 * k), mpp(n, 3 * k);
  for (int j = 0; j < 3; ++j) {
    const Array ctt = w * 2.0 * xt[j];
    const Array ctp_t = w * xp[j] / s;
    const Array ctp_p = w * xt[j] / s;
    const Array cpp = w * 2.0 * xp[j] / (s * s);
    mtt.middleCols(j * k, k) = tab.bt.array().colwise() * ctt;
    mtp.middleCols(j * k, k) = (tab.bt.array().colwise() * ctp_t).matrix() +
                               (tab.bp.array().colwise() * ctp_p).matrix();
    mpp.middleCols(j * k, k) = tab.bp.array().colwise() * cpp;
  }
  Eigen::MatrixXd normal = mtt.transpose() * mtt;
  normal.noalias() += mtp.transpose() * mtp;
  normal.noalias() += mpp.transpose() * mpp;
  const Real lambda = normal.trace() / (3 * k);
  normal.noalias() += (lambda / kFourPi) * tab.gauge.transpose() * tab.gauge;
  return normal;
}

const EmbedTables& embed_tables(const GridPtr& grid) {
  static std::mutex mu;
  static std::map<const SphereGrid*, std::unique_ptr<EmbedTables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[grid.get()];
  if (slot) return *slot;

  auto tables = std::make_unique<EmbedTables>();
  const int n = grid->size();
  const int k = Coeffs::size(grid->lmax());
  tables->b.resize(n, k);
  tables->bt.resize(n, k);
  tables->bp.resize(n, k);
  Coeffs unit;
  unit.lmax = grid->lmax();
  unit.c.setZero(k);
  for (int idx = 0; idx < k; ++idx) {
    unit.c[idx] = 1.0;
    tables->b.col(idx) = grid->synthesize(unit).matrix();
    tables->bt.col(idx) = grid->synth_dtheta(unit).matrix();
    tables->bp.col(idx) = grid->synth_dphi(unit).matrix();
    unit.c[idx] = 0.0;
  }

  // gauge functionals: means and antisymmetric first moments
  tables->gauge = Eigen::MatrixXd::Zero(6, 3 * k);
  for (int j = 0; j < 3; ++j) {
    tables->gauge.block(j, j * k, 1, k) =
        grid->weights().matrix().transpose() * tables->b;
  }
  int row = 3;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j, ++row) {
      tables->gauge.block(row, j * k, 1, k) =
          (grid->weights() * grid->xhat(i)).matrix().transpose() * tables->b;
      tables->gauge.block(row, i * k, 1, k) -=
          (grid->weights() * grid->xhat(j)).matrix().transpose() * tables->b;
    }
  }

  // normal matrix of the isometry Jacobian at the unit round sphere, in
  // the orthonormal frame (tt, tp/s, pp/s^2), quadrature-weighted
  std::array<Array, 3> xt, xp;
  for (int j = 0; j < 3; ++j) {
    xt[j] = grid->xhat_d(j, 1, 0);
    xp[j] = grid->xhat_d(j, 0, 1);
  }
  tables->normal.compute(assemble_normal(*grid, *tables, xt, xp));
  if (tables->normal.info() != Eigen::Success) {
    throw numerical_error("embedding solver: normal matrix factorization failed");
  }
  slot = std::move(tables);
  return *slot;
}

}  // namespace

EmbedResult embed_r3_newton(const SymTensorField& sigma,
                            const std::array<ScalarField, 3>& x_init,
                            const EmbedOptions& opts) {
  const auto& grid = sigma.grid;
  const int k = Coeffs::size(grid->lmax());
  const auto& tab = embed_tables(grid);
  const Array& s = grid->sin_theta();

  if (opts.check_curvature) {
    const auto kg = gauss_curvature(sigma);
    if (kg.v.minCoeff() <= 0.0) {
      throw numerical_error("embed_r3_newton: metric has non-positive Gauss curvature");
    }
  }

  const Real scale = std::max({sigma.tt.abs().maxCoeff(),
                               (sigma.pp / (s * s)).abs().maxCoeff(), 1e-30});
  // metric radius estimate for scaling the frozen Jacobian
  const Real r_est = std::sqrt(scale);

  Eigen::VectorXd coef(3 * k);
  for (int j = 0; j < 3; ++j) {
    coef.segment(j * k, k) = grid->analyze(x_init[j].v).c;
  }

  EmbedResult out;
  out.scale = scale;

  // residual components of the induced metric in the orthonormal frame
  std::array<Array, 3> xt, xp;
  Array rtt, rtp, rpp;
  Real l2 = 0.0;  // Gauss-Newton objective, quadrature-weighted
  auto compute_residual = [&](const Eigen::VectorXd& c) {
    rtt = -sigma.tt;
    rtp = -sigma.tp;
    rpp = -sigma.pp;
    for (int j = 0; j < 3; ++j) {
      xt[j] = (tab.bt * c.segment(j * k, k)).array();
      xp[j] = (tab.bp * c.segment(j * k, k)).array();
      rtt += xt[j] * xt[j];
      rtp += xt[j] * xp[j];
      rpp += xp[j] * xp[j];
    }
    rtp /= s;
    rpp /= s * s;
    l2 = std::sqrt((grid->weights() * (rtt.square() + rtp.square() + rpp.square())).sum());
    return std::max({rtt.abs().maxCoeff(), rtp.abs().maxCoeff(), rpp.abs().maxCoeff()});
  };

  // J^T R against the Jacobian tangents (jt, jp), frame-weighted
  auto gradient_rhs = [&](const std::array<Array, 3>& jt, const std::array<Array, 3>& jp) {
    Eigen::VectorXd rhs(3 * k);
    const Array w2 = grid->weights();
    for (int j = 0; j < 3; ++j) {
      Eigen::VectorXd acc =
          tab.bt.transpose() * (w2 * (2.0 * jt[j] * rtt + (jp[j] / s) * rtp)).matrix();
      acc += tab.bp.transpose() *
             (w2 * ((jt[j] / s) * rtp + 2.0 * (jp[j] / (s * s)) * rpp)).matrix();
      rhs.segment(j * k, k) = acc;
    }
    return rhs;
  };

  // frozen round-sphere Jacobian by default; refreshed at the current
  // iterate when contraction stalls
  bool use_round = true;
  std::array<Array, 3> jac_t, jac_p;
  for (int j = 0; j < 3; ++j) {
    jac_t[j] = grid->xhat_d(j, 1, 0);
    jac_p[j] = grid->xhat_d(j, 0, 1);
  }
  Eigen::LDLT<Eigen::MatrixXd> local_normal;
  int refreshes = 0;
  auto refresh = [&]() {
    jac_t = xt;
    jac_p = xp;
    local_normal.compute(assemble_normal(*grid, tab, jac_t, jac_p));
    if (local_normal.info() != Eigen::Success) {
      throw numerical_error("embed_r3_newton: refreshed normal matrix is singular");
    }
    use_round = false;
    ++refreshes;
  };

  Real sup = compute_residual(coef);
  int stalls = 0;
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    out.residual = sup;
    out.iterations = iter;
    if (opts.trace) {
      std::cerr << "embed iter " << iter << " sup=" << sup << " l2=" << l2
                << " refreshes=" << refreshes << "\n";
    }
    if (sup < opts.tol_rel * scale) break;
    if (iter == opts.max_iter - 1) {
      throw numerical_error("embed_r3_newton: no convergence");
    }

    const Eigen::VectorXd rhs = gradient_rhs(jac_t, jac_p);
    Eigen::VectorXd step =
        use_round ? Eigen::VectorXd(tab.normal.solve(rhs) / r_est) : local_normal.solve(rhs);

    // backtracking line search on the Gauss-Newton objective
    Real eta = (iter == 0) ? 0.5 : 1.0;
    bool accepted = false;
    const Real l2_old = l2;
    const Eigen::VectorXd coef_old = coef;
    for (int ls = 0; ls < 6; ++ls) {
      coef = coef_old - eta * step;
      sup = compute_residual(coef);
      if (l2 < l2_old * (1.0 - 1e-3 * eta)) {
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) {
      coef = coef_old;
      sup = compute_residual(coef);
      // truncation floor of the representation: accept when the contract
      // tolerance is met even though the requested one is not
      if (sup < 1e-9 * scale) {
        out.residual = sup;
        break;
      }
      if (refreshes < 3) {
        refresh();
        continue;
      }
      throw numerical_error("embed_r3_newton: line search failed");
    }
    if (l2 > 0.9 * l2_old) {
      if (++stalls >= 2 && refreshes < 3) {
        refresh();
        stalls = 0;
      }
    } else {
      stalls = 0;
    }
  }

  for (int j = 0; j < 3; ++j) {
    Coeffs cj;
    cj.lmax = grid->lmax();
    cj.c = coef.segment(j * k, k);
    out.x[j] = ScalarField{grid, grid->synthesize(cj)};
  }

  if (opts.gauge == GaugeTarget::kFromInit) {
    // iteration steps avoid the rigid-motion directions, so the initial
    // gauge carries through
    return out;
  }

  // exact gauge fixing of the converged embedding
  Vec3 mean;
  for (int j = 0; j < 3; ++j) {
    mean[j] = integrate(*grid, out.x[j].v) / kFourPi;
    out.x[j].v -= mean[j];
  }
  for (int pass = 0; pass < 3; ++pass) {
    Mat3 moment = Mat3::Zero();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) moment(i, j) = integrate(*grid, grid->xhat(i) * out.x[j].v);
    const Mat3 anti = 0.5 * (moment - moment.transpose());
    Vec3 omega(anti(1, 2), anti(2, 0), anti(0, 1));
    omega *= -3.0 / kFourPi;
    if (omega.norm() < 1e-15 * r_est) break;
    const Mat3 rot = Eigen::AngleAxisd(omega.norm(), omega.normalized()).toRotationMatrix();
    std::array<Array, 3> rotated;
    for (int i = 0; i < 3; ++i) {
      rotated[i] = rot(i, 0) * out.x[0].v + rot(i, 1) * out.x[1].v + rot(i, 2) * out.x[2].v;
    }
    for (int i = 0; i < 3; ++i) out.x[i].v = rotated[i];
  }
  return out;
}

ScalarField mean_curvature_r3(const std::array<ScalarField, 3>& x,
                              const SymTensorField& sigma) {
  Array acc = Array::Zero(sigma.grid->size());
  for (int j = 0; j < 3; ++j) {
    acc += laplace_beltrami(sigma, x[j]).v.square();
  }
  return {sigma.grid, acc.sqrt()};
}

}  // namespace ql
