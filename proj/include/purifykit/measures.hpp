#pragma once

// Measures that reduce to optimization over SO(3) or over the circle of
// rotations fixing a vector: the maximal singlet fraction and the
// Hilbert–Schmidt distance from a state to its nearest joint purification.

#include <cmath>
#include <numbers>
#include <string>

#include "purifykit/joint_purification.hpp"
#include "purifykit/oracle.hpp"

namespace purifykit {

enum class SingletBranch { det_neg, det_nonneg };

constexpr std::string_view to_string(SingletBranch b) {
  return b == SingletBranch::det_neg ? "DET_NEG" : "DET_NONNEG";
}

struct SingletFractionResult {
  double value = 0.25;
  Mat3 optimizer_delta = Mat3::Identity();  // orthogonal, det −1
  SingletBranch branch = SingletBranch::det_nonneg;
};

/// The maximally entangled states are β = γ = 0, δ = D with D orthogonal and
/// det D = −1, and ⟨ψ|ρ|ψ⟩ = ¼(1 + Tr(δ_ρᵀD)). With δ_ρ = S·diag(s₁, s₂, ±s₃)·Tᵀ
/// (S, T ∈ SO(3)) the maximizer is D = S·diag(1, 1, −1)·Tᵀ, giving
/// ¼(1 + s₁ + s₂ + s₃) when det δ_ρ < 0 and ¼(1 + s₁ + s₂ − s₃) otherwise.
inline SingletFractionResult max_singlet_fraction(const TwoQubitBloch& rho, double tol = kStateTol) {
  if (!is_state(rho, tol)) throw Error(Errc::not_a_state, "max_singlet_fraction: input is not positive semidefinite");
  const so3::SignedSvd3 svd = so3::signed_svd3(rho.delta);
  SingletFractionResult r;
  r.branch = svd.det_sign < 0 ? SingletBranch::det_neg : SingletBranch::det_nonneg;
  const double third = r.branch == SingletBranch::det_neg ? svd.sigma[2] : -svd.sigma[2];
  r.value = 0.25 * (1.0 + svd.sigma[0] + svd.sigma[1] + third);
  r.optimizer_delta = svd.s.matrix() * Vec3(1.0, 1.0, -1.0).asDiagonal() * svd.t.matrix().transpose();
  return r;
}

/// Best overlap over `samples` Haar-sampled maximally entangled states
/// D = R·diag(1, 1, −1). A lower bound on max_singlet_fraction.
inline double singlet_fraction_oracle(const TwoQubitBloch& rho, long samples, Rng& rng) {
  const Mat3 flip = Vec3(1.0, 1.0, -1.0).asDiagonal();
  const auto overlap = [&](const Mat3& r) { return 0.25 * (1.0 + (rho.delta.transpose() * r * flip).trace()); };
  return oracle::sampled_max_so3(overlap, samples, rng).value;
}

/// Hilbert–Schmidt distance √Tr((ρ_a − ρ_b)²). By bilinearity of the trace
/// product formula, Tr((ρ_a − ρ_b)²) = ¼(‖Δβ‖² + ‖Δγ‖² + ‖Δδ‖_F²).
inline double hs_distance(const TwoQubitBloch& a, const TwoQubitBloch& b) {
  const double d2 =
      0.25 * ((a.beta - b.beta).squaredNorm() + (a.gamma - b.gamma).squaredNorm() + (a.delta - b.delta).squaredNorm());
  return std::sqrt(d2);
}

/// f(θ) = constant + a·cos θ + b·sin θ.
struct FourierCoefficients {
  double constant = 0.0;
  double a = 0.0;
  double b = 0.0;

  double operator()(double theta) const { return constant + a * std::cos(theta) + b * std::sin(theta); }
  double max_value() const { return constant + std::hypot(a, b); }
  double argmax() const { return so3::wrap_two_pi(std::atan2(b, a)); }
};

/// F(C_θ) = Tr(EᵀD·C_θ) for C_θ the rotation by θ about γ.
///
/// With EᵀD = V·Σ·Wᵀ and unit ĝ = γ/‖γ‖, put pᵢ = ⟨vᵢ,ĝ⟩, sᵢ = ⟨wᵢ,ĝ⟩,
/// xᵢ = vᵢ − pᵢĝ, yᵢ = wᵢ − sᵢĝ. Then C_θvᵢ = pᵢĝ + cos θ·xᵢ + sin θ·ĝ×xᵢ, so
///   const = Σσᵢpᵢsᵢ,  a = Σσᵢ⟨yᵢ,xᵢ⟩,  b = Σσᵢ⟨yᵢ, ĝ×xᵢ⟩.
inline FourierCoefficients f_theta_coefficients(const Mat3& e, const Mat3& d, const Vec3& gamma) {
  const double gn = gamma.norm();
  if (gn == 0.0) throw Error(Errc::zero_gamma, "f_theta_coefficients: gamma = 0 (optimize over all of SO(3))");
  const Vec3 g = gamma / gn;
  const so3::SignedSvd3 svd = so3::signed_svd3(e.transpose() * d);
  const Vec3 sigma = svd.signed_diagonal();
  FourierCoefficients f;
  for (int i = 0; i < 3; ++i) {
    const Vec3 v = svd.s.matrix().col(i), w = svd.t.matrix().col(i);
    const double p = v.dot(g), s = w.dot(g);
    const Vec3 x = v - p * g, y = w - s * g;
    f.constant += sigma[i] * p * s;
    f.a += sigma[i] * y.dot(x);
    f.b += sigma[i] * y.dot(g.cross(x));
  }
  return f;
}

struct NearestJointResult {
  double theta_star = 0.0;
  double distance = 0.0;
  double f_max = 0.0;
  FourierCoefficients fourier;
  so3::Rotation3 rotation;  // C maximizing Tr(EᵀDC)
  TwoQubitBloch minimizer;
};

/// Closest joint purification of ρ's own marginals in Hilbert–Schmidt
/// distance. Minimizing ‖DC − E‖_F over admissible C is maximizing
/// F(C) = Tr(EᵀDC). For γ ≠ 0 the admissible C form a circle and F is a
/// first harmonic in θ; for γ = 0 every rotation is admissible and the
/// maximum comes from the signed SVD of (EᵀD)ᵀ.
inline NearestJointResult nearest_joint_purification(const TwoQubitBloch& rho, double tol = kStateTol) {
  if (!can_jointly_purify(rho.beta, rho.gamma, tol))
    throw Error(Errc::marginal_mismatch, "marginals have |beta| = " + std::to_string(rho.beta.norm()) +
                                             ", |gamma| = " + std::to_string(rho.gamma.norm()));
  if (!is_state(rho, tol)) throw Error(Errc::not_a_state, "nearest_joint_purification: input is not positive semidefinite");

  const JointFamily fam = joint_particular(rho.beta, rho.gamma, tol);
  const Mat3& d = fam.delta_tilde;
  const Mat3& e = rho.delta;
  NearestJointResult r;

  if (fam.regime == JointRegime::center) {
    const so3::SignedSvd3 svd = so3::signed_svd3((e.transpose() * d).transpose());
    r.rotation = svd.s * svd.t.transpose();
    r.f_max = svd.signed_diagonal().sum();
    r.fourier = {r.f_max, 0.0, 0.0};
    r.theta_star = 0.0;
    r.minimizer = joint_purification_center(fam, r.rotation);
  } else {
    r.fourier = f_theta_coefficients(e, d, fam.gamma);
    r.theta_star = r.fourier.argmax();
    r.f_max = r.fourier.max_value();
    r.rotation = fam.regime == JointRegime::boundary ? so3::Rotation3::identity()
                                                     : so3::stabilizer_rotation(fam.gamma, r.theta_star);
    r.minimizer = joint_purification(fam, r.theta_star);
  }
  r.distance = hs_distance(rho, r.minimizer);
  return r;
}

struct EquidistanceReport {
  double spread = 0.0;  // max − min of F over the grid
  double value = 0.0;   // mean of F over the grid
};

/// For the product state ρ_β ⊗ ρ_γ (E = βγᵀ), F(C_θ) is constant and equals ‖β‖².
inline EquidistanceReport equidistance_check(const Vec3& beta, const Vec3& gamma, int grid, double tol = kStateTol) {
  if (grid < 1) throw Error(Errc::dimension_mismatch, "equidistance_check: grid must be >= 1");
  const JointFamily fam = joint_particular(beta, gamma, tol);
  if (fam.regime == JointRegime::center) throw Error(Errc::zero_gamma, "equidistance_check requires |beta| > 0");
  const Mat3 m = (beta * gamma.transpose()).transpose() * fam.delta_tilde;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
  for (int k = 0; k < grid; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / grid;
    const double f = (m * so3::stabilizer_rotation(fam.gamma, theta).matrix()).trace();
    lo = std::min(lo, f);
    hi = std::max(hi, f);
    sum += f;
  }
  return {hi - lo, sum / grid};
}

}  // namespace purifykit
