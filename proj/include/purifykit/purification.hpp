#pragma once

// Purifications of a single qubit state ρ = ½(I + β·σ).
//
// Every purification has correlation block δ solving
//     δδᵀ = (1 − ‖β‖²)I₃ + ββᵀ,   det δ = ‖β‖² − 1,
// and second marginal γ = δᵀβ. Given one particular solution δ̃ the general
// solution is δ̃·C, C ∈ SO(3).

#include <cmath>
#include <string>

#include "purifykit/bloch.hpp"
#include "purifykit/so3.hpp"

namespace purifykit {

enum class PurificationRegime { center, interior, boundary };

constexpr std::string_view to_string(PurificationRegime r) {
  switch (r) {
    case PurificationRegime::center: return "CENTER";
    case PurificationRegime::interior: return "INTERIOR";
    case PurificationRegime::boundary: return "BOUNDARY";
  }
  return "UNKNOWN";
}

inline constexpr double kCenterThreshold = 1e-12;
inline constexpr double kBoundaryThreshold = 1e-9;

inline PurificationRegime classify_regime(double beta_norm) {
  if (beta_norm < kCenterThreshold) return PurificationRegime::center;
  if (beta_norm > 1.0 - kBoundaryThreshold) return PurificationRegime::boundary;
  return PurificationRegime::interior;
}

struct PurificationFamily {
  Vec3 beta = Vec3::Zero();
  Mat3 delta_particular = Mat3::Identity();
  PurificationRegime regime = PurificationRegime::center;
};

/// Residual of the purification system; zero iff delta solves it for beta.
inline double verify_system(const Mat3& delta, const Vec3& beta) {
  const double b2 = beta.squaredNorm();
  const Mat3 rhs = (1.0 - b2) * Mat3::Identity() + beta * beta.transpose();
  return std::max((delta * delta.transpose() - rhs).norm(), std::abs(delta.determinant() - (b2 - 1.0)));
}

/// CENTER: diag(1, 1, −1). INTERIOR: the negated symmetric square root of
/// the system's right-hand side, −[β̂β̂ᵀ + √(1 − ‖β‖²)(I − β̂β̂ᵀ)].
/// BOUNDARY: ββᵀ.
inline PurificationFamily particular_delta(const Vec3& beta_in, double tol = kStateTol) {
  PurificationFamily fam;
  fam.beta = clamp_bloch(beta_in, tol);
  const double n = fam.beta.norm();
  fam.regime = classify_regime(n);
  switch (fam.regime) {
    case PurificationRegime::center:
      fam.delta_particular = Vec3(1.0, 1.0, -1.0).asDiagonal();
      break;
    case PurificationRegime::interior: {
      const Vec3 u = fam.beta / n;
      const Mat3 proj = u * u.transpose();
      fam.delta_particular = -(proj + std::sqrt((1.0 - n) * (1.0 + n)) * (Mat3::Identity() - proj));
      break;
    }
    case PurificationRegime::boundary:
      fam.delta_particular = fam.beta * fam.beta.transpose();
      break;
  }
  return fam;
}

/// The pure state (β, δᵀβ, δ) with δ = δ̃·c.
inline TwoQubitBloch purification(const PurificationFamily& fam, const so3::Rotation3& c) {
  TwoQubitBloch s;
  s.beta = fam.beta;
  s.delta = fam.delta_particular * c.matrix();
  s.gamma = s.delta.transpose() * s.beta;
  return s;
}

inline TwoQubitBloch purification(const Vec3& beta, const so3::Rotation3& c, double tol = kStateTol) {
  return purification(particular_delta(beta, tol), c);
}

/// Whether c1 and c2 label the same purification. Compared at the level of
/// δ, which determines the state. On the boundary this reduces to c1ᵀβ = c2ᵀβ.
inline bool family_equivalence(const Vec3& beta, const so3::Rotation3& c1, const so3::Rotation3& c2,
                               double tol = kStateTol) {
  const PurificationFamily fam = particular_delta(beta, tol);
  return (fam.delta_particular * (c1.matrix() - c2.matrix())).norm() <= tol;
}

/// [δᵀδ]⁻¹ via the rank-one Sherman–Morrison–Woodbury update of
/// X = (1 − ‖β‖²)I₃, using δᵀδ = X + γγᵀ with γ = δᵀβ.
inline Mat3 woodbury_inverse_gram(const Mat3& delta, const Vec3& beta) {
  const double x = 1.0 - beta.squaredNorm();
  if (x <= 0.0) throw Error(Errc::not_interior, "woodbury_inverse_gram: |beta| = 1");
  const Vec3 g = delta.transpose() * beta;
  const Mat3 x_inv = Mat3::Identity() / x;
  const Mat3 y = g * g.transpose();
  return x_inv - (x_inv * y * x_inv) / (1.0 + (y * x_inv).trace());
}

/// For two solutions of the system, C = delta2⁻¹·delta1 is a rotation.
/// Returns ‖CCᵀ − I₃‖_F + |det C − 1|.
inline double woodbury_crosscheck(const Vec3& beta, const Mat3& delta1, const Mat3& delta2) {
  if (classify_regime(beta.norm()) == PurificationRegime::boundary)
    throw Error(Errc::not_interior, "woodbury_crosscheck requires |beta| < 1");
  const Mat3 c = delta2.inverse() * delta1;
  return (c * c.transpose() - Mat3::Identity()).norm() + std::abs(c.determinant() - 1.0);
}

}  // namespace purifykit
