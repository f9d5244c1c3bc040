// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include "ql/surface_geometry.hpp"

namespace ql {

/// Killing field of Minkowski space, K^b(X) = K_a{}^b X^a + t^b, stored by
/// its antisymmetric lower-index matrix and translation part.
struct KillingField {
  Mat4 k_low = Mat4::Zero();  // K_{alpha gamma} = -K_{gamma alpha}
  Vec4 translation = Vec4::Zero();

  /// Rotation generator L_i = X^j d_k - X^k d_j, (i, j, k) cyclic.
  static KillingField rotation(int axis);
  /// Boost generator X^i d_0 + X^0 d_i.
  static KillingField boost(int axis);
  static KillingField translation_of(const Vec4& b);

  /// Mixed-index matrix M^b_a = K_a{}^b acting on column coordinates.
  Mat4 mixed() const { return (k_low * minkowski_metric()).transpose(); }
  Vec4 at(const Vec4& x) const { return mixed() * x + translation; }
  /// Push-forward along a Lorentz map.
  KillingField transformed(const Mat4& lorentz) const;
};

/// The dual element of the Lorentz algebra plus the energy-momentum vector.
struct ConservedDual {
  Mat4 phi = Mat4::Zero();  // antisymmetric
  Vec4 p = Vec4::Zero();
};

/// Pointwise data reused across evaluations on a fixed (surface, embedding).
struct EvaluationContext {
  GridPtr grid;
  std::array<Array, 4> x;
  std::array<Array, 4> dx_th, dx_ph;
  Array rho;
  CovectorField j;
  InverseMetric inv;
  Array measure;  // quadrature weights times area element ratio
  Vec4 t0;
};

EvaluationContext make_context(const SurfaceData& data, const Embedding31& emb);

Real evaluate(const EvaluationContext& ctx, const KillingField& k);
Real evaluate(const SurfaceData& data, const Embedding31& emb, const KillingField& k);

ConservedDual dual_element(const EvaluationContext& ctx);
ConservedDual dual_element(const SurfaceData& data, const Embedding31& emb);

/// Pairing of the dual element with a pure Lorentz generator.
Real pair(const ConservedDual& dual, const KillingField& k);

struct TranslationCheck {
  ConservedDual shifted;   // recomputed from X + b
  Real deviation = 0.0;    // from the transformation law
};

TranslationCheck translate_embedding_law(const SurfaceData& data, const Embedding31& emb,
                                         const Vec4& b);

struct BoostDerivativeCheck {
  Real derivative = 0.0;  // five-point derivative of the boosted energy
  Real pairing = 0.0;     // E(Sigma, X, d_0, d_i)
};

/// Observer family sqrt(1+s^2) d_0 + s d_i applied to a fixed embedding;
/// requires emb.t0 = d_0.
BoostDerivativeCheck boost_energy_derivative(const SurfaceData& data, const Embedding31& emb,
                                             int axis, Real h = 1e-3);

/// Komar integral of the axial Killing field over the coordinate sphere r = R
/// on the t = 0 Boyer-Lindquist slice. chi is an optional axisymmetric
/// rapidity profile boosting the normal frame (the result must not change).
Real komar_angular_momentum(Real m, Real a, Real R, const GridPtr& grid,
                            const ScalarField* frame_rapidity = nullptr);

}  // namespace ql
