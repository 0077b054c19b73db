#pragma once

// Joint purifications: pure two-qubit states whose marginals are both
// prescribed. They exist iff ‖β‖ = ‖γ‖ ≤ 1; the family is δ̃·C with C
// fixing γ (a circle), all of SO(3) when β = γ = 0, and a single state when
// ‖β‖ = 1.

#include <cmath>
#include <string>

#include "purifykit/purification.hpp"

namespace purifykit {

enum class JointRegime { generic, center, boundary };

constexpr std::string_view to_string(JointRegime r) {
  switch (r) {
    case JointRegime::generic: return "GENERIC";
    case JointRegime::center: return "CENTER";
    case JointRegime::boundary: return "BOUNDARY";
  }
  return "UNKNOWN";
}

struct JointFamily {
  Vec3 beta = Vec3::Zero();
  Vec3 gamma = Vec3::Zero();
  Mat3 delta_tilde = Mat3::Identity();
  JointRegime regime = JointRegime::center;
};

inline bool can_jointly_purify(const Vec3& beta, const Vec3& gamma, double tol = kStateTol) {
  const double nb = beta.norm(), ng = gamma.norm();
  return std::abs(nb - ng) <= tol && nb <= 1.0 + tol && ng <= 1.0 + tol;
}

/// δ̃ = δ_sp·C where δ_sp is the single-marginal particular solution and Cᵀ
/// rotates δ_spᵀβ onto γ (both have length ‖β‖).
inline JointFamily joint_particular(const Vec3& beta, const Vec3& gamma, double tol = kStateTol) {
  if (!can_jointly_purify(beta, gamma, tol))
    throw Error(Errc::not_jointly_purifiable, "|beta| = " + std::to_string(beta.norm()) +
                                                  ", |gamma| = " + std::to_string(gamma.norm()));
  const PurificationFamily single = particular_delta(beta, tol);
  JointFamily fam;
  fam.beta = single.beta;
  fam.gamma = clamp_bloch(gamma, tol);
  switch (single.regime) {
    case PurificationRegime::center:
      fam.regime = JointRegime::center;
      fam.delta_tilde = single.delta_particular;
      return fam;
    case PurificationRegime::interior: fam.regime = JointRegime::generic; break;
    case PurificationRegime::boundary: fam.regime = JointRegime::boundary; break;
  }
  const Vec3 image = single.delta_particular.transpose() * fam.beta;
  const so3::Rotation3 align = so3::rotation_aligning(image, fam.gamma, tol);
  fam.delta_tilde = single.delta_particular * align.matrix().transpose();
  return fam;
}

inline TwoQubitBloch joint_state(const JointFamily& fam, const Mat3& delta) {
  TwoQubitBloch s;
  s.beta = fam.beta;
  s.delta = delta;
  s.gamma = delta.transpose() * fam.beta;
  return s;
}

/// δ = δ̃·C_θ with C_θ the rotation by θ about γ; C_θγ = γ keeps δᵀβ = γ.
/// In the BOUNDARY regime θ is ignored (the joint purification is unique).
inline TwoQubitBloch joint_purification(const JointFamily& fam, double theta) {
  switch (fam.regime) {
    case JointRegime::center:
      throw Error(Errc::wrong_regime, "beta = gamma = 0: use joint_purification_center");
    case JointRegime::boundary: return joint_state(fam, fam.delta_tilde);
    case JointRegime::generic: break;
  }
  return joint_state(fam, fam.delta_tilde * so3::stabilizer_rotation(fam.gamma, theta).matrix());
}

/// β = γ = 0: every rotation of δ̃ is a joint purification.
inline TwoQubitBloch joint_purification_center(const JointFamily& fam, const so3::Rotation3& c) {
  if (fam.regime != JointRegime::center)
    throw Error(Errc::wrong_regime, "joint_purification_center requires beta = gamma = 0");
  return joint_state(fam, fam.delta_tilde * c.matrix());
}

}  // namespace purifykit
