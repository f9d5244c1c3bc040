// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace ql {

using Real = double;
using Array = Eigen::ArrayXd;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

inline constexpr Real kPi = 3.14159265358979323846264338327950288;
inline constexpr Real kFourPi = 4.0 * kPi;

/// Minkowski inner product, signature (-,+,+,+).
inline Real minkowski_dot(const Vec4& u, const Vec4& v) {
  return -u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3];
}

inline Mat4 minkowski_metric() {
  Mat4 eta = Mat4::Identity();
  eta(0, 0) = -1.0;
  return eta;
}

/// Pure boost A with A e_0 = t for a future unit timelike t.
inline Mat4 pure_boost_to(const Vec4& t) {
  Mat4 a = Mat4::Identity();
  const Vec3 v = t.tail<3>();
  a(0, 0) = t[0];
  a.block<3, 1>(1, 0) = v;
  a.block<1, 3>(0, 1) = v.transpose();
  a.block<3, 3>(1, 1) = Mat3::Identity() + v * v.transpose() / (1.0 + t[0]);
  return a;
}

struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ql
