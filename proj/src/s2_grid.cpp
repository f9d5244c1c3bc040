// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "ql/s2_grid.hpp"

#include <cmath>

namespace ql {

namespace {

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<Real>& x, std::vector<Real>& w) {
  x.resize(n);
  w.resize(n);
  for (int k = 0; k < n; ++k) {
    Real xi = std::cos(kPi * (k + 0.75) / (n + 0.5));
    Real dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      Real p0 = 1.0, p1 = xi;
      for (int l = 2; l <= n; ++l) {
        const Real p2 = ((2 * l - 1) * xi * p1 - (l - 1) * p0) / l;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
      const Real dx = p1 / dp;
      xi -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    x[k] = xi;
    w[k] = 2.0 / ((1.0 - xi * xi) * dp * dp);
  }
}

// Normalized associated Legendre values P̄_l^m(x) for fixed x and all
// l = m..lmax, without the Condon-Shortley phase. Also dP̄/dtheta.
void legendre_column(int lmax, int m, Real x, Real s, Real* p, Real* dp_dtheta) {
  // p has lmax+1-m entries indexed by l-m
  Real pmm = std::sqrt(1.0 / kFourPi);
  for (int k = 1; k <= m; ++k) {
    pmm *= std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
  }
  p[0] = pmm;
  if (lmax > m) {
    p[1] = std::sqrt(2.0 * m + 3.0) * x * pmm;
  }
  for (int l = m + 2; l <= lmax; ++l) {
    const Real a = std::sqrt((4.0 * l * l - 1.0) / (Real(l) * l - Real(m) * m));
    const Real b =
        std::sqrt((Real(l - 1) * (l - 1) - Real(m) * m) / (4.0 * Real(l - 1) * (l - 1) - 1.0));
    p[l - m] = a * (x * p[l - 1 - m] - b * p[l - 2 - m]);
  }
  // d/dtheta P̄_l^m = (l x P̄_l^m - c_lm P̄_{l-1}^m) / sin(theta)
  for (int l = m; l <= lmax; ++l) {
    const Real c =
        (l == m) ? 0.0
                 : std::sqrt((Real(l) * l - Real(m) * m) * (2.0 * l + 1.0) / (2.0 * l - 1.0));
    const Real below = (l == m) ? 0.0 : p[l - 1 - m];
    dp_dtheta[l - m] = (l * x * p[l - m] - c * below) / s;
  }
}

}  // namespace

SphereGrid::~SphereGrid() = default;

GridPtr SphereGrid::create(int lmax) {
  if (lmax < 4) {
    throw config_error("SphereGrid: lmax must be at least 4");
  }
  auto grid = std::shared_ptr<SphereGrid>(new SphereGrid());
  grid->lmax_ = lmax;
  const int nt = lmax + 1;
  const int np = 2 * lmax + 2;
  grid->ntheta_ = nt;
  grid->nphi_ = np;
  const int n = nt * np;

  std::vector<Real> x, w;
  gauss_legendre(nt, x, w);
  // gauss_legendre returns descending-x order; keep theta ascending
  grid->theta_.resize(nt);
  grid->gl_weight_.resize(nt);
  for (int i = 0; i < nt; ++i) {
    grid->theta_[i] = std::acos(x[i]);
    grid->gl_weight_[i] = w[i];
  }

  grid->weight_.resize(n);
  grid->sin_theta_.resize(n);
  grid->cos_theta_.resize(n);
  grid->csc_theta_.resize(n);
  for (int i = 0; i < nt; ++i) {
    const Real st = std::sin(grid->theta_[i]);
    const Real ct = std::cos(grid->theta_[i]);
    for (int j = 0; j < np; ++j) {
      const int k = i * np + j;
      grid->weight_[k] = w[i] * (2.0 * kPi / np);
      grid->sin_theta_[k] = st;
      grid->cos_theta_[k] = ct;
      grid->csc_theta_[k] = 1.0 / st;
    }
  }

  // Legendre tables
  grid->legendre_.resize(lmax + 1);
  grid->legendre_d_.resize(lmax + 1);
  grid->legendre_d2_.resize(lmax + 1);
  std::vector<Real> pcol(lmax + 1), dcol(lmax + 1);
  for (int m = 0; m <= lmax; ++m) {
    const int cols = lmax + 1 - m;
    grid->legendre_[m].resize(nt, cols);
    grid->legendre_d_[m].resize(nt, cols);
    grid->legendre_d2_[m].resize(nt, cols);
    for (int i = 0; i < nt; ++i) {
      const Real ct = std::cos(grid->theta_[i]);
      const Real st = std::sin(grid->theta_[i]);
      legendre_column(lmax, m, ct, st, pcol.data(), dcol.data());
      for (int l = m; l <= lmax; ++l) {
        const Real p = pcol[l - m];
        const Real dp = dcol[l - m];
        grid->legendre_[m](i, l - m) = p;
        grid->legendre_d_[m](i, l - m) = dp;
        // from the associated Legendre equation
        grid->legendre_d2_[m](i, l - m) =
            -(ct / st) * dp - (l * (l + 1.0) - Real(m) * m / (st * st)) * p;
      }
    }
  }

  grid->cos_table_.resize(np, lmax + 1);
  grid->sin_table_.resize(np, lmax + 1);
  for (int j = 0; j < np; ++j) {
    for (int m = 0; m <= lmax; ++m) {
      grid->cos_table_(j, m) = std::cos(m * grid->phi(j));
      grid->sin_table_(j, m) = std::sin(m * grid->phi(j));
    }
  }

  // Round-embedding partials: component i separates as f_i(theta) g_i(phi).
  grid->xhat_partials_.resize(3 * 10);
  auto slot = [](int comp, int kt, int kp) {
    static const int off[4] = {0, 1, 3, 6};  // start of order kt+kp block
    return comp * 10 + off[kt + kp] + kp;
  };
  for (int comp = 0; comp < 3; ++comp) {
    for (int kt = 0; kt <= 3; ++kt) {
      for (int kp = 0; kp + kt <= 3; ++kp) {
        Array a(n);
        for (int i = 0; i < nt; ++i) {
          const Real th = grid->theta_[i];
          // derivative cycles of sin/cos
          auto dsin = [](Real u, int k) {
            switch (k % 4) {
              case 0: return std::sin(u);
              case 1: return std::cos(u);
              case 2: return -std::sin(u);
              default: return -std::cos(u);
            }
          };
          auto dcos = [&dsin](Real u, int k) { return dsin(u, k + 1); };
          const Real ft = (comp == 2) ? dcos(th, kt) : dsin(th, kt);
          for (int j = 0; j < np; ++j) {
            const Real ph = grid->phi(j);
            Real gp;
            if (comp == 0) {
              gp = dsin(ph, kp);
            } else if (comp == 1) {
              gp = dcos(ph, kp);
            } else {
              gp = (kp == 0) ? 1.0 : 0.0;
            }
            a[i * np + j] = ft * gp;
          }
        }
        grid->xhat_partials_[slot(comp, kt, kp)] = std::move(a);
      }
    }
  }
  return grid;
}

const Array& SphereGrid::xhat_d(int i, int kt, int kp) const {
  static const int off[4] = {0, 1, 3, 6};
  return xhat_partials_[i * 10 + off[kt + kp] + kp];
}

Coeffs SphereGrid::analyze(const Array& values) const {
  Coeffs out;
  out.lmax = lmax_;
  out.c.setZero(Coeffs::size(lmax_));

  Eigen::Map<const Eigen::MatrixXd> m(values.data(), nphi_, ntheta_);
  const Eigen::MatrixXd gc = cos_table_.transpose() * m;  // (L+1) x ntheta
  const Eigen::MatrixXd gs = sin_table_.transpose() * m;

  const Real dphi_weight = 2.0 * kPi / nphi_;
  for (int mm = 0; mm <= lmax_; ++mm) {
    const Real fac = (mm == 0 ? 1.0 : std::sqrt(2.0)) * dphi_weight;
    const Eigen::VectorXd tc =
        gl_weight_.matrix().cwiseProduct(gc.row(mm).transpose()) * fac;
    const Eigen::VectorXd pc = legendre_[mm].transpose() * tc;
    if (mm == 0) {
      for (int l = 0; l <= lmax_; ++l) out.c[Coeffs::index_m0(l)] = pc[l];
    } else {
      const Eigen::VectorXd ts =
          gl_weight_.matrix().cwiseProduct(gs.row(mm).transpose()) * fac;
      const Eigen::VectorXd ps = legendre_[mm].transpose() * ts;
      for (int l = mm; l <= lmax_; ++l) {
        out.c[Coeffs::index_cos(l, mm, lmax_)] = pc[l - mm];
        out.c[Coeffs::index_sin(l, mm, lmax_)] = ps[l - mm];
      }
    }
  }
  return out;
}

Array SphereGrid::synth_impl(const Coeffs& a, int dtheta, int dphi) const {
  const std::vector<Eigen::MatrixXd>* table = &legendre_;
  if (dtheta == 1) table = &legendre_d_;
  if (dtheta == 2) table = &legendre_d2_;

  Eigen::MatrixXd fc = Eigen::MatrixXd::Zero(lmax_ + 1, ntheta_);
  Eigen::MatrixXd fs = Eigen::MatrixXd::Zero(lmax_ + 1, ntheta_);
  for (int mm = 0; mm <= lmax_; ++mm) {
    const Real fac = (mm == 0 ? 1.0 : std::sqrt(2.0));
    Eigen::VectorXd ac(lmax_ + 1 - mm), as(lmax_ + 1 - mm);
    if (mm == 0) {
      for (int l = 0; l <= lmax_; ++l) ac[l] = a.c[Coeffs::index_m0(l)];
      as.setZero();
    } else {
      for (int l = mm; l <= lmax_; ++l) {
        ac[l - mm] = a.c[Coeffs::index_cos(l, mm, lmax_)];
        as[l - mm] = a.c[Coeffs::index_sin(l, mm, lmax_)];
      }
    }
    fc.row(mm) = (fac * (*table)[mm] * ac).transpose();
    fs.row(mm) = (fac * (*table)[mm] * as).transpose();
  }

  Eigen::MatrixXd m;
  if (dphi == 0) {
    m = cos_table_ * fc + sin_table_ * fs;
  } else {
    // d/dphi swaps cos/sin blocks with factors -m, +m; d2/dphi2 scales by -m^2
    Eigen::VectorXd mfac(lmax_ + 1);
    for (int mm = 0; mm <= lmax_; ++mm) mfac[mm] = mm;
    if (dphi == 1) {
      m = cos_table_ * (mfac.asDiagonal() * fs) - sin_table_ * (mfac.asDiagonal() * fc);
    } else {
      const Eigen::VectorXd m2 = -mfac.cwiseProduct(mfac);
      m = cos_table_ * (m2.asDiagonal() * fc) + sin_table_ * (m2.asDiagonal() * fs);
    }
  }

  Array out(size());
  Eigen::Map<Eigen::MatrixXd>(out.data(), nphi_, ntheta_) = m;
  return out;
}

Array SphereGrid::synthesize(const Coeffs& a) const { return synth_impl(a, 0, 0); }
Array SphereGrid::synth_dtheta(const Coeffs& a) const { return synth_impl(a, 1, 0); }
Array SphereGrid::synth_dphi(const Coeffs& a) const { return synth_impl(a, 0, 1); }
Array SphereGrid::synth_d2theta(const Coeffs& a) const { return synth_impl(a, 2, 0); }
Array SphereGrid::synth_dtheta_dphi(const Coeffs& a) const { return synth_impl(a, 1, 1); }
Array SphereGrid::synth_d2phi(const Coeffs& a) const { return synth_impl(a, 0, 2); }

Real SphereGrid::evaluate_at(const Coeffs& a, Real theta, Real phi) const {
  const Real x = std::cos(theta), s = std::sin(theta);
  std::vector<Real> p(lmax_ + 1), dp(lmax_ + 1);
  Real sum = 0.0;
  for (int mm = 0; mm <= lmax_; ++mm) {
    legendre_column(lmax_, mm, x, s, p.data(), dp.data());
    const Real fac = (mm == 0 ? 1.0 : std::sqrt(2.0));
    const Real cm = std::cos(mm * phi), sm = std::sin(mm * phi);
    for (int l = mm; l <= lmax_; ++l) {
      if (mm == 0) {
        sum += a.c[Coeffs::index_m0(l)] * p[l];
      } else {
        sum += fac * p[l - mm] *
               (a.c[Coeffs::index_cos(l, mm, lmax_)] * cm +
                a.c[Coeffs::index_sin(l, mm, lmax_)] * sm);
      }
    }
  }
  return sum;
}

}  // namespace ql
