#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/SVD>

#include "purifykit/core.hpp"

namespace purifykit::so3 {

inline bool is_rotation(const Mat3& m, double tol = kStateTol) {
  return (m.transpose() * m - Mat3::Identity()).norm() <= tol && std::abs(m.determinant() - 1.0) <= tol;
}

/// A 3x3 special-orthogonal matrix.
class Rotation3 {
 public:
  struct trusted_t {};
  static constexpr trusted_t trusted{};

  Rotation3() : m_(Mat3::Identity()) {}

  /// Validating constructor; throws Errc::not_rotation.
  explicit Rotation3(const Mat3& m, double tol = kStateTol) : m_(m) {
    if (!is_rotation(m, tol)) throw Error(Errc::not_rotation, "matrix is not in SO(3)");
  }

  /// For matrices that are rotations by construction.
  Rotation3(const Mat3& m, trusted_t) : m_(m) {}

  static Rotation3 identity() { return {}; }

  const Mat3& matrix() const { return m_; }
  Rotation3 transpose() const { return {m_.transpose(), trusted}; }

  Vec3 operator*(const Vec3& v) const { return m_ * v; }
  Rotation3 operator*(const Rotation3& o) const { return {m_ * o.m_, trusted}; }

 private:
  Mat3 m_;
};

/// Axis e = (cos θ sin φ, sin θ sin φ, cos φ), rotation angle ψ.
struct AxisAngle {
  double theta_d = 0.0;  // azimuth, [0, 2π)
  double phi_d = 0.0;    // polar, [0, π]
  double psi_d = 0.0;    // rotation angle, [0, 2π)

  Vec3 axis() const {
    return {std::cos(theta_d) * std::sin(phi_d), std::sin(theta_d) * std::sin(phi_d), std::cos(phi_d)};
  }
};

inline Mat3 cross_matrix(const Vec3& k) {
  Mat3 c;
  c << 0.0, -k.z(), k.y(), k.z(), 0.0, -k.x(), -k.y(), k.x(), 0.0;
  return c;
}

/// Counterclockwise rotation by psi about the unit vector k (Rodrigues).
inline Rotation3 rotation_about(const Vec3& k, double psi) {
  const double c = std::cos(psi), s = std::sin(psi);
  const Mat3 m = c * Mat3::Identity() + s * cross_matrix(k) + (1.0 - c) * (k * k.transpose());
  return {m, Rotation3::trusted};
}

/// v ↦ ⟨v,e⟩e + R_ψ(v − ⟨v,e⟩e).
inline Rotation3 from_axis_angle(const AxisAngle& a) { return rotation_about(a.axis(), a.psi_d); }

inline double wrap_two_pi(double x) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  x = std::fmod(x, two_pi);
  if (x < 0.0) x += two_pi;
  return x >= two_pi ? 0.0 : x;
}

inline AxisAngle axis_to_spherical(const Vec3& e, double psi) {
  AxisAngle a;
  a.phi_d = std::acos(std::clamp(e.z(), -1.0, 1.0));
  a.theta_d = (e.x() == 0.0 && e.y() == 0.0) ? 0.0 : wrap_two_pi(std::atan2(e.y(), e.x()));
  a.psi_d = psi;
  return a;
}

/// Inverse of from_axis_angle with ψ ∈ [0, π]. The identity maps to ψ = 0
/// about +z.
///
/// The axial vector w = vee(r − rᵀ)/2 has length sin ψ, so ψ = atan2(‖w‖, cos ψ)
/// stays accurate near 0. For ψ > π/2 the axis is read off the symmetric part
/// (r + rᵀ)/2 − cos ψ·I = (1 − cos ψ)eeᵀ instead, which stays well conditioned
/// up to ψ = π; w only fixes its sign.
inline AxisAngle to_axis_angle(const Rotation3& rot, double tol = kStateTol) {
  const Mat3& r = rot.matrix();
  if (!is_rotation(r, tol)) throw Error(Errc::not_rotation, "to_axis_angle: matrix is not in SO(3)");
  const Vec3 w{0.5 * (r(2, 1) - r(1, 2)), 0.5 * (r(0, 2) - r(2, 0)), 0.5 * (r(1, 0) - r(0, 1))};
  const double cos_psi = std::clamp(0.5 * (r.trace() - 1.0), -1.0, 1.0);
  const double sin_psi = w.norm();
  const double psi = std::atan2(sin_psi, cos_psi);

  if (cos_psi >= 0.0) {
    if (sin_psi == 0.0) return {0.0, 0.0, 0.0};
    return axis_to_spherical(w / sin_psi, psi);
  }
  const Mat3 b = 0.5 * (r + r.transpose()) - cos_psi * Mat3::Identity();
  Eigen::Index col = 0;
  b.diagonal().maxCoeff(&col);
  Vec3 e = b.col(col).normalized();
  if (e.dot(w) < 0.0) e = -e;
  return axis_to_spherical(e, psi);
}

/// Some rotation with result·u = v. u = v gives I₃; u = −v gives the
/// π-rotation about normalize(u × e_k), e_k the basis vector along u's
/// smallest |component|.
inline Rotation3 rotation_aligning(const Vec3& u, const Vec3& v, double tol = kStateTol) {
  const double nu = u.norm(), nv = v.norm();
  if (nu == 0.0 || nv == 0.0) throw Error(Errc::zero_vector, "rotation_aligning: zero vector");
  if (std::abs(nu - nv) > tol * std::max(1.0, nu))
    throw Error(Errc::norm_mismatch, "rotation_aligning: |u| = " + std::to_string(nu) + ", |v| = " + std::to_string(nv));
  const Vec3 a = u / nu, b = v / nv;
  const Vec3 w = a.cross(b);
  const double s = w.norm(), c = a.dot(b);
  if (s <= kAlgebraTol) {
    if (c > 0.0) return Rotation3::identity();
    Eigen::Index k = 0;
    a.cwiseAbs().minCoeff(&k);
    const Vec3 axis = a.cross(Vec3::Unit(k)).normalized();
    return rotation_about(axis, std::numbers::pi);
  }
  return rotation_about(w / s, std::atan2(s, c));
}

/// Rotation by theta about gamma; fixes gamma. The stabilizer of γ ≠ 0 is
/// exactly this one-parameter family.
inline Rotation3 stabilizer_rotation(const Vec3& gamma, double theta) {
  const double n = gamma.norm();
  if (n == 0.0) throw Error(Errc::zero_vector, "stabilizer_rotation: gamma = 0 (stabilizer is all of SO(3))");
  return rotation_about(gamma / n, theta);
}

/// Haar-uniform rotation from a uniform unit quaternion (Shoemake).
inline Rotation3 random_rotation(Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double u1 = unif(rng), u2 = unif(rng), u3 = unif(rng);
  const double two_pi = 2.0 * std::numbers::pi;
  const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
  const Eigen::Quaterniond q(b * std::cos(two_pi * u3), a * std::sin(two_pi * u2), a * std::cos(two_pi * u2),
                             b * std::sin(two_pi * u3));
  return {q.toRotationMatrix(), Rotation3::trusted};
}

/// a = s · diag(σ₁, σ₂, det_sign·σ₃) · tᵀ with s, t ∈ SO(3), σ₁ ≥ σ₂ ≥ σ₃ ≥ 0.
struct SignedSvd3 {
  Rotation3 s;
  Rotation3 t;
  Vec3 sigma = Vec3::Zero();
  int det_sign = 1;

  Vec3 signed_diagonal() const { return {sigma[0], sigma[1], det_sign * sigma[2]}; }
  Mat3 reconstruct() const { return s.matrix() * signed_diagonal().asDiagonal() * t.matrix().transpose(); }
};

inline SignedSvd3 signed_svd3(const Mat3& a) {
  Eigen::JacobiSVD<Mat3> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 u = svd.matrixU(), v = svd.matrixV();
  int sign = 1;
  if (u.determinant() < 0.0) {
    u.col(2) = -u.col(2);
    sign = -sign;
  }
  if (v.determinant() < 0.0) {
    v.col(2) = -v.col(2);
    sign = -sign;
  }
  SignedSvd3 out;
  out.s = Rotation3(u, Rotation3::trusted);
  out.t = Rotation3(v, Rotation3::trusted);
  out.sigma = svd.singularValues();
  out.det_sign = out.sigma[2] == 0.0 ? 1 : sign;
  return out;
}

}  // namespace purifykit::so3
