#pragma once

// Conversions between density matrices and real Bloch coordinates for one
// and two qubits, plus the purity characterization of two-qubit states.

#include <array>
#include <cmath>
#include <string>

#include "purifykit/core.hpp"

namespace purifykit {

/// σ₁, σ₂, σ₃ in the order x, y, z, with σ₂ = [[0, −i], [i, 0]].
inline const std::array<Mat2c, 3>& pauli_basis() {
  static const std::array<Mat2c, 3> basis = [] {
    const cplx i{0.0, 1.0};
    std::array<Mat2c, 3> s;
    s[0] << 0.0, 1.0, 1.0, 0.0;
    s[1] << 0.0, -i, i, 0.0;
    s[2] << 1.0, 0.0, 0.0, -1.0;
    return s;
  }();
  return basis;
}

inline Mat4c kron(const Mat2c& a, const Mat2c& b) {
  Mat4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

namespace detail {

inline void require_dim(const CMatrix& m, Eigen::Index dim, const char* who) {
  if (m.rows() != dim || m.cols() != dim)
    throw Error(Errc::dimension_mismatch, std::string(who) + " expects a " + std::to_string(dim) +
                                              "x" + std::to_string(dim) + " matrix, got " +
                                              std::to_string(m.rows()) + "x" +
                                              std::to_string(m.cols()));
}

}  // namespace detail

/// Checks Hermiticity (entrywise) and unit trace, then returns (ρ + ρ†)/2.
inline CMatrix validated_density(const CMatrix& rho, double tol = kStateTol) {
  if (rho.rows() != rho.cols() || rho.rows() == 0)
    throw Error(Errc::dimension_mismatch, "density matrix must be square and non-empty");
  const double skew = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (skew > tol) throw Error(Errc::not_hermitian, "max |rho - rho^H| = " + std::to_string(skew));
  const double tr_err = std::abs(rho.trace() - cplx{1.0, 0.0});
  if (tr_err > tol) throw Error(Errc::trace_not_one, "|Tr rho - 1| = " + std::to_string(tr_err));
  return (rho + rho.adjoint()) * 0.5;
}

/// Norm policy for Bloch vectors: ‖b‖ ≤ 1 passes, (1, 1 + tol] is radially
/// rescaled onto the sphere, anything larger throws.
inline Vec3 clamp_bloch(const Vec3& b, double tol = kStateTol) {
  const double n = b.norm();
  if (n > 1.0 + tol) throw Error(Errc::bloch_norm_exceeded, "|b| = " + std::to_string(n));
  return n > 1.0 ? Vec3(b / n) : b;
}

inline Vec3 qubit_to_bloch(const CMatrix& rho, double tol = kStateTol) {
  detail::require_dim(rho, 2, "qubit_to_bloch");
  const CMatrix h = validated_density(rho, tol);
  const auto& s = pauli_basis();
  Vec3 b;
  for (int i = 0; i < 3; ++i) b[i] = (h * s[i]).trace().real();
  return b;
}

inline Mat2c bloch_to_qubit(const Vec3& b, double tol = kStateTol) {
  const Vec3 c = clamp_bloch(b, tol);
  const auto& s = pauli_basis();
  Mat2c rho = Mat2c::Identity();
  for (int i = 0; i < 3; ++i) rho += c[i] * s[i];
  return rho * 0.5;
}

/// Extracts (β, γ, δ). The first tensor factor is the one kept by the
/// partial trace over the second factor, so β is the first marginal.
inline TwoQubitBloch two_qubit_to_bloch(const CMatrix& rho, double tol = kStateTol) {
  detail::require_dim(rho, 4, "two_qubit_to_bloch");
  const CMatrix h = validated_density(rho, tol);
  const auto& s = pauli_basis();
  const Mat2c id = Mat2c::Identity();
  TwoQubitBloch out;
  for (int i = 0; i < 3; ++i) {
    out.beta[i] = (h * kron(s[i], id)).trace().real();
    out.gamma[i] = (h * kron(id, s[i])).trace().real();
  }
  for (int l = 0; l < 3; ++l)
    for (int k = 0; k < 3; ++k) out.delta(l, k) = (h * kron(s[l], s[k])).trace().real();
  return out;
}

/// Hermitian, trace one; positivity is not implied.
inline Mat4c bloch_to_two_qubit(const TwoQubitBloch& st) {
  const auto& s = pauli_basis();
  const Mat2c id = Mat2c::Identity();
  Mat4c rho = Mat4c::Identity();
  for (int i = 0; i < 3; ++i) {
    rho += st.beta[i] * kron(s[i], id);
    rho += st.gamma[i] * kron(id, s[i]);
  }
  for (int l = 0; l < 3; ++l)
    for (int k = 0; k < 3; ++k) rho += st.delta(l, k) * kron(s[l], s[k]);
  return rho * 0.25;
}

/// Tr(ρ₁ρ₂) = ¼(1 + ⟨β₁,β₂⟩ + ⟨γ₁,γ₂⟩ + Tr(δ₂ᵀδ₁)).
inline double trace_product(const TwoQubitBloch& a, const TwoQubitBloch& b) {
  return 0.25 * (1.0 + a.beta.dot(b.beta) + a.gamma.dot(b.gamma) + (b.delta.transpose() * a.delta).trace());
}

/// Bloch vector left after tracing out the second qubit.
inline Vec3 partial_trace_second(const TwoQubitBloch& s) { return s.beta; }
/// Bloch vector left after tracing out the first qubit.
inline Vec3 partial_trace_first(const TwoQubitBloch& s) { return s.gamma; }

/// Classical adjugate (transposed cofactor matrix).
inline Mat3 adjugate3(const Mat3& m) {
  Mat3 cof;
  for (int i = 0; i < 3; ++i) {
    const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
    for (int j = 0; j < 3; ++j) {
      const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      cof(i, j) = m(i1, j1) * m(i2, j2) - m(i1, j2) * m(i2, j1);
    }
  }
  return cof.transpose();
}

/// Smallest eigenvalue of the reconstructed 4x4 matrix.
inline double min_eigenvalue(const TwoQubitBloch& s) {
  Eigen::SelfAdjointEigenSolver<Mat4c> es(bloch_to_two_qubit(s), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

inline bool is_state(const TwoQubitBloch& s, double tol = kStateTol) { return min_eigenvalue(s) >= -tol; }

struct PurityReport {
  double residual_beta_eq = 0.0;   // ‖β − δγ‖
  double residual_gamma_eq = 0.0;  // ‖γ − δᵀβ‖
  double residual_delta_eq = 0.0;  // ‖δ + adj(δ)ᵀ − βγᵀ‖_F
  double norm_sum = 0.0;           // ‖β‖² + ‖γ‖² + Tr(δᵀδ)
  bool is_pure = false;
};

/// Pure two-qubit states are exactly those with β = δγ, γ = δᵀβ,
/// δ = −adj(δ)ᵀ + βγᵀ and ‖β‖² + ‖γ‖² + Tr(δᵀδ) = 3.
inline PurityReport purity_report(const TwoQubitBloch& s, double tol = kStateTol) {
  PurityReport r;
  r.residual_beta_eq = (s.beta - s.delta * s.gamma).norm();
  r.residual_gamma_eq = (s.gamma - s.delta.transpose() * s.beta).norm();
  r.residual_delta_eq = (s.delta + adjugate3(s.delta).transpose() - s.beta * s.gamma.transpose()).norm();
  r.norm_sum = s.beta.squaredNorm() + s.gamma.squaredNorm() + s.delta.squaredNorm();
  r.is_pure = r.residual_beta_eq <= tol && r.residual_gamma_eq <= tol && r.residual_delta_eq <= tol &&
              std::abs(r.norm_sum - 3.0) <= tol;
  return r;
}

/// Mixed state ρ = M² for the Hermitian M = ¼(κI + Σβ₀σ⊗I + Σγ₀I⊗σ + Σδ₀σ⊗σ)
/// with κ = +√(4 − ‖β₀‖² − ‖γ₀‖² − Tr(δ₀ᵀδ₀)).
///
/// Expanding M² gives +β₀γ₀ᵀ in the correlation block. The opposite sign
/// does not produce positive matrices (see tests/test_bloch.cpp).
inline TwoQubitBloch mixed_from_seed(const Vec3& beta0, const Vec3& gamma0, const Mat3& delta0) {
  const double load = beta0.squaredNorm() + gamma0.squaredNorm() + delta0.squaredNorm();
  if (load > 4.0) throw Error(Errc::seed_norm_exceeded, "seed norm^2 = " + std::to_string(load) + " > 4");
  const double kappa = std::sqrt(4.0 - load);
  TwoQubitBloch s;
  s.beta = 0.5 * (kappa * beta0 + delta0 * gamma0);
  s.gamma = 0.5 * (kappa * gamma0 + delta0.transpose() * beta0);
  s.delta = 0.5 * (kappa * delta0 - adjugate3(delta0).transpose() + beta0 * gamma0.transpose());
  return s;
}

}  // namespace purifykit
