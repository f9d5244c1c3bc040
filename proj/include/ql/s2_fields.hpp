// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include "ql/s2_grid.hpp"

namespace ql {

/// Scalar samples at the grid nodes.
struct ScalarField {
  GridPtr grid;
  Array v;

  ScalarField() = default;
  ScalarField(GridPtr g, Array values) : grid(std::move(g)), v(std::move(values)) {}
  static ScalarField zero(const GridPtr& g) { return {g, Array::Zero(g->size())}; }
  static ScalarField constant(const GridPtr& g, Real c) {
    return {g, Array::Constant(g->size(), c)};
  }
};

/// One-form components (lower index) in the coordinate basis (d theta, d phi).
struct CovectorField {
  GridPtr grid;
  Array th, ph;

  CovectorField() = default;
  CovectorField(GridPtr g, Array t, Array p)
      : grid(std::move(g)), th(std::move(t)), ph(std::move(p)) {}
  static CovectorField zero(const GridPtr& g) {
    return {g, Array::Zero(g->size()), Array::Zero(g->size())};
  }
};

/// Symmetric 2-tensor components T_{theta theta}, T_{theta phi}, T_{phi phi}.
struct SymTensorField {
  GridPtr grid;
  Array tt, tp, pp;

  SymTensorField() = default;
  SymTensorField(GridPtr g, Array a, Array b, Array c)
      : grid(std::move(g)), tt(std::move(a)), tp(std::move(b)), pp(std::move(c)) {}
  static SymTensorField zero(const GridPtr& g) {
    const int n = g->size();
    return {g, Array::Zero(n), Array::Zero(n), Array::Zero(n)};
  }
  /// Round metric scaled by r^2.
  static SymTensorField round(const GridPtr& g, Real r2 = 1.0) {
    return {g, Array::Constant(g->size(), r2), Array::Zero(g->size()),
            r2 * g->sin_theta().square()};
  }
};

inline Real integrate(const ScalarField& f) { return integrate(*f.grid, f.v); }

}  // namespace ql
