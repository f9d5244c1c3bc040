// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include "ql/surface_sampling.hpp"

namespace ql {

/// Future unit timelike observer direction in the reference Minkowski space.
struct Observer {
  Vec4 t0 = Vec4(1.0, 0.0, 0.0, 0.0);

  Observer() = default;
  explicit Observer(const Vec4& t) : t0(t) { validate(); }
  void validate() const {
    if (std::abs(minkowski_dot(t0, t0) + 1.0) > 1e-12 || t0[0] <= 0.0) {
      throw numerical_error("observer must be future unit timelike");
    }
  }
  static Observer boosted(const Vec3& velocity) {
    const Real g = 1.0 / std::sqrt(1.0 - velocity.squaredNorm());
    return Observer(Vec4(g, g * velocity[0], g * velocity[1], g * velocity[2]));
  }
};

/// Embedding of the parameter sphere into Minkowski space with an observer.
struct Embedding31 {
  GridPtr grid;
  std::array<Array, 4> x;
  Observer t0;
  Real isometry_residual = 0.0;  // recorded by the solvers that produced it

  static Embedding31 round_sphere(const GridPtr& g, Real radius,
                                  const Observer& obs = Observer());
  /// Image under a Lorentz map and a translation, observer mapped along.
  Embedding31 transformed(const Mat4& lorentz, const Vec4& shift = Vec4::Zero()) const;
  Embedding31 translated(const Vec4& shift) const { return transformed(Mat4::Identity(), shift); }
};

/// Geometry of the image surface and of its projection along the observer.
struct ReferenceData {
  ScalarField H0norm;
  CovectorField alphaH0;
  SymTensorField sigma_hat;  // projected-surface metric
  SymTensorField hhat_ab;    // its second fundamental form
  ScalarField Hhat;          // its mean curvature
};

ScalarField tau_field(const Embedding31& emb);

SymTensorField induced_metric(const Embedding31& emb);

ScalarField theta_field(const ScalarField& tau, const SymTensorField& sigma,
                        const ScalarField& hnorm);

ScalarField rho_field(const ScalarField& tau, const SymTensorField& sigma,
                      const ScalarField& hnorm, const ScalarField& h0norm);

CovectorField j_covector(const ScalarField& tau, const SymTensorField& sigma,
                         const ScalarField& hnorm, const CovectorField& alphaH,
                         const ScalarField& h0norm, const CovectorField& alphaH0);

ScalarField optimal_residual(const ScalarField& tau, const SymTensorField& sigma,
                             const ScalarField& hnorm, const CovectorField& alphaH,
                             const ScalarField& h0norm, const CovectorField& alphaH0);

ReferenceData reference_data_from_embedding(const Embedding31& emb,
                                            SurfaceBuild* full = nullptr);

Real quasilocal_energy(const SurfaceData& data, const Embedding31& emb);

/// Convenience: residual of the optimal-embedding equation for given data.
ScalarField optimal_residual(const SurfaceData& data, const Embedding31& emb);

}  // namespace ql
