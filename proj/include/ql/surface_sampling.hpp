// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include "ql/initial_data.hpp"
#include "ql/s2_fields.hpp"

namespace ql {

/// The physical data of a spacelike 2-surface: induced metric, norm of the
/// (spacelike) mean curvature vector, and the connection one-form of the
/// normal bundle in the mean-curvature gauge.
struct SurfaceData {
  SymTensorField sigma;
  ScalarField Hnorm;
  CovectorField alphaH;
};

/// Per-node description of a surface inside a 4-geometry, plus seeds for the
/// normal frame. Tangent component arrays hold chart components.
struct SurfaceChart {
  GridPtr grid;
  std::array<Array, 4> q;
  std::array<Array, 4> e_th, e_ph;
  std::array<Array, 4> de_tt, de_tp, de_pp;  // plain d_a E_b
  std::array<Array, 4> v_time, v_radial;     // normal-space seeds
};

/// Mean curvature vector, reflected vector, frame and slice diagnostics of a
/// sampled surface.
struct SurfaceBuild {
  SurfaceData data;
  std::array<Array, 4> H, J, e3, e4;
  Array hhat;       // -<H, e3>: mean curvature seen in the e3 direction
  Array h_e4;       // -<H, e4>: e4 component of H in the frame expansion
  Array area;       // sqrt(det sigma)
};

/// Flat ambient: metric eta everywhere, vanishing connection.
SurfaceBuild build_surface_flat(const SurfaceChart& chart);

/// Curved ambient described by a model; q holds chart coordinates.
SurfaceBuild build_surface(const SurfaceChart& chart, const SpacetimeModel& model);

/// Data of the coordinate sphere of radius r in the t-slice of the model.
SurfaceData coordinate_sphere_surface_data(const SpacetimeModel& model, Real t, Real r,
                                           const GridPtr& grid,
                                           SurfaceBuild* full = nullptr);

/// Data of the surface r = R, t = f(u) inside Kerr, with f a field on the
/// grid (the slice profile). Throws if the surface is not spacelike.
SurfaceData kerr_slice_surface_data(Real m, Real a, Real R, const ScalarField& f,
                                    const GridPtr& grid, SurfaceBuild* full = nullptr);

}  // namespace ql
