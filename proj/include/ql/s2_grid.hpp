// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <memory>
#include <vector>

#include "ql/types.hpp"

namespace ql {

class SphereGrid;
using GridPtr = std::shared_ptr<const SphereGrid>;

/// Packed real spherical-harmonic coefficients up to degree lmax.
/// Layout: the m=0 block (l = 0..L), then for each m >= 1 a cosine block
/// followed by a sine block, each of length L+1-m.
struct Coeffs {
  int lmax = 0;
  Eigen::VectorXd c;

  static int size(int lmax) { return (lmax + 1) * (lmax + 1); }
  static int index_m0(int l) { return l; }
  static int base(int m, int lmax) {
    // offset of the cosine block for order m >= 1
    return (lmax + 1) + (m - 1) * (2 * (lmax + 1) - m);
  }
  static int index_cos(int l, int m, int lmax) { return base(m, lmax) + (l - m); }
  static int index_sin(int l, int m, int lmax) {
    return base(m, lmax) + (lmax + 1 - m) + (l - m);
  }
};

/// Quadrature nodes, weights and harmonic transform plan on the unit sphere.
///
/// Nodes are Gauss-Legendre in cos(theta) crossed with uniform phi, so the
/// poles are never sampled and products of harmonics up to combined degree
/// 2*lmax are integrated exactly. All tables are immutable after
/// construction; instances are shared through GridPtr.
class SphereGrid {
 public:
  /// Builds the grid and transform plan. Requires lmax >= 4.
  static GridPtr create(int lmax);

  int lmax() const { return lmax_; }
  int ntheta() const { return ntheta_; }
  int nphi() const { return nphi_; }
  int size() const { return ntheta_ * nphi_; }
  int node(int i, int j) const { return i * nphi_ + j; }

  Real theta(int i) const { return theta_[i]; }
  Real phi(int j) const { return 2.0 * kPi * j / nphi_; }

  /// Node weights; sum equals the sphere area 4*pi.
  const Array& weights() const { return weight_; }
  const Array& sin_theta() const { return sin_theta_; }
  const Array& cos_theta() const { return cos_theta_; }
  const Array& csc_theta() const { return csc_theta_; }

  /// Cartesian components of the round embedding, x1 = sin(theta) sin(phi),
  /// x2 = sin(theta) cos(phi), x3 = cos(theta).
  const Array& xhat(int i) const { return xhat_d(i, 0, 0); }
  /// Plain partial d^kt_theta d^kp_phi of xhat component i, kt + kp <= 3.
  const Array& xhat_d(int i, int kt, int kp) const;

  Coeffs analyze(const Array& values) const;
  Array synthesize(const Coeffs& a) const;
  Array synth_dtheta(const Coeffs& a) const;
  Array synth_dphi(const Coeffs& a) const;
  Array synth_d2theta(const Coeffs& a) const;
  Array synth_dtheta_dphi(const Coeffs& a) const;
  Array synth_d2phi(const Coeffs& a) const;

  /// Evaluates a coefficient set at an arbitrary point of the sphere.
  Real evaluate_at(const Coeffs& a, Real theta, Real phi) const;

  ~SphereGrid();

 private:
  SphereGrid() = default;

  // synthesis with selectable theta-table and phi-derivative order
  Array synth_impl(const Coeffs& a, int dtheta, int dphi) const;

  int lmax_ = 0, ntheta_ = 0, nphi_ = 0;
  std::vector<Real> theta_;
  Array gl_weight_;   // ntheta Gauss-Legendre weights (for dx = sin dtheta)
  Array weight_;      // per-node weights, size N
  Array sin_theta_, cos_theta_, csc_theta_;  // per node, size N

  // normalized associated Legendre tables per order m: ntheta x (lmax+1-m)
  std::vector<Eigen::MatrixXd> legendre_;    // P
  std::vector<Eigen::MatrixXd> legendre_d_;  // dP/dtheta
  std::vector<Eigen::MatrixXd> legendre_d2_; // d2P/dtheta2
  Eigen::MatrixXd cos_table_, sin_table_;    // nphi x (lmax+1)

  std::vector<Array> xhat_partials_;  // [component][multi-index]
};

/// Quadrature of a node-value array against the grid measure.
inline Real integrate(const SphereGrid& grid, const Array& values) {
  return (grid.weights() * values).sum();
}

}  // namespace ql
