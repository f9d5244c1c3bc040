// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <array>

#include "ql/s2_ops.hpp"

namespace ql {

/// Pointwise inverse components (upper indices) and determinant.
struct InverseMetric {
  Array tt, tp, pp, det;
};

/// Throws numerical_error if the metric is not positive definite somewhere.
InverseMetric invert_metric(const SymTensorField& sigma);

/// sqrt(det sigma) at the nodes (the coordinate area element).
Array area_element(const SymTensorField& sigma);

/// Integral of f against the measure of sigma.
Real integrate(const SymTensorField& sigma, const Array& f);

/// sigma^{ab} w_a u_b at the nodes.
Array inner(const InverseMetric& inv, const CovectorField& w, const CovectorField& u);

/// Covector with plain partial derivatives of its components.
///
/// Components are differentiated through their Cartesian-frame lift so the
/// result is spectrally accurate and pole-safe.
struct CovectorJet {
  Array th, ph;
  Array dth[2], dph[2];  // d_a omega_theta, d_a omega_phi, a in {theta, phi}
};
CovectorJet covector_jet(const CovectorField& w);

/// Symmetric tensor with plain partials of its components.
/// Component order: 0 = tt, 1 = tp, 2 = pp; partial index a in {theta, phi}.
struct SymTensorJet {
  std::array<Array, 3> comp;
  std::array<std::array<Array, 2>, 3> d1;                 // d1[c][a]
  std::array<std::array<Array, 3>, 3> d2;                 // d2[c][ab], ab in {tt, tp, pp}
  bool has_second = false;
};
SymTensorJet sym_tensor_jet(const SymTensorField& s, bool second_order = false);

/// Christoffel symbols of sigma; index c in {theta, phi}, ab in {tt, tp, pp}.
struct Christoffel {
  std::array<std::array<Array, 3>, 2> g;
};
Christoffel christoffel(const SymTensorField& sigma);

SymTensorField hessian(const SymTensorField& sigma, const ScalarField& f);
ScalarField laplace_beltrami(const SymTensorField& sigma, const ScalarField& f);
ScalarField divergence(const SymTensorField& sigma, const CovectorField& w);

/// eps^{ab} grad_b w_a of the round metric (the curl scalar).
ScalarField curl_moment(const CovectorField& w);

/// sigma^{bc} grad_b T_{ca}, the metric divergence of a symmetric 2-tensor.
CovectorField divergence_tensor(const SymTensorField& sigma, const SymTensorField& t);

/// Gauss curvature of sigma from spectral derivatives of the Christoffel data.
ScalarField gauss_curvature(const SymTensorField& sigma);

}  // namespace ql
