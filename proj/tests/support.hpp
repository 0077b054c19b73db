#pragma once

// Random generators and matrix-level oracles shared by the test binaries.
// The oracles work on explicit 2x2 / 4x4 complex matrices and never go
// through the Bloch-coordinate code they are used to check.

#include <cmath>
#include <numbers>
#include <random>

#include "purifykit/purifykit.hpp"

namespace purifykit::testing {

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vec3 random_unit(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v;
  do {
    v = {n(rng), n(rng), n(rng)};
  } while (v.norm() < 1e-6);
  return v.normalized();
}

/// Direction uniform, norm uniform in [lo, hi].
inline Vec3 random_vector(Rng& rng, double lo, double hi) { return uniform(rng, lo, hi) * random_unit(rng); }

inline Mat3 random_mat3(Rng& rng, double scale = 1.0) {
  Mat3 m;
  for (int i = 0; i < 9; ++i) m.data()[i] = uniform(rng, -scale, scale);
  return m;
}

inline CMatrix random_ginibre(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix g(dim, dim);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = cplx{n(rng), n(rng)};
  return g;
}

/// G·G†/Tr, full rank with probability one.
inline CMatrix random_density(Eigen::Index dim, Rng& rng) {
  const CMatrix g = random_ginibre(dim, rng);
  CMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

inline Eigen::VectorXcd random_ket(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = cplx{n(rng), n(rng)};
  return v.normalized();
}

inline CMatrix random_pure(Eigen::Index dim, Rng& rng) {
  const Eigen::VectorXcd v = random_ket(dim, rng);
  return v * v.adjoint();
}

/// Random Hermitian, trace one, not necessarily positive.
inline CMatrix random_hermitian_trace_one(Eigen::Index dim, Rng& rng) {
  const CMatrix g = random_ginibre(dim, rng);
  CMatrix h = (g + g.adjoint()) * 0.5;
  h -= CMatrix::Identity(dim, dim) * ((h.trace().real() - 1.0) / static_cast<double>(dim));
  return h;
}

/// Haar SU(2) from a uniform unit quaternion.
inline Mat2c random_su2(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Vector4d q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  Mat2c u;
  u << cplx{q[0], q[3]}, cplx{q[2], q[1]}, cplx{-q[2], q[1]}, cplx{q[0], -q[3]};
  return u;
}

/// ½(I + b·σ) written out entrywise.
inline Mat2c qubit_matrix(const Vec3& b) {
  Mat2c m;
  m << cplx{1.0 + b.z(), 0.0}, cplx{b.x(), -b.y()}, cplx{b.x(), b.y()}, cplx{1.0 - b.z(), 0.0};
  return m * 0.5;
}

inline Mat4c kron_oracle(const Mat2c& a, const Mat2c& b) {
  Mat4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

/// Tr over the second factor: (Tr₂ρ)_{ij} = Σₖ ρ_{(i,k),(j,k)}.
inline Mat2c trace_out_second(const CMatrix& rho) {
  Mat2c r = Mat2c::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) r(i, j) += rho(2 * i + k, 2 * j + k);
  return r;
}

/// Tr over the first factor: (Tr₁ρ)_{kl} = Σᵢ ρ_{(i,k),(i,l)}.
inline Mat2c trace_out_first(const CMatrix& rho) {
  Mat2c r = Mat2c::Zero();
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l)
      for (int i = 0; i < 2; ++i) r(k, l) += rho(2 * i + k, 2 * i + l);
  return r;
}

/// Singlet (|01⟩ − |10⟩)/√2 as a projector.
inline Mat4c singlet_projector() {
  Eigen::Vector4cd psi(0.0, 1.0, -1.0, 0.0);
  psi /= std::sqrt(2.0);
  return psi * psi.adjoint();
}

/// Spectrum via the independent Jacobi solver, ascending.
inline Eigen::VectorXd spectrum(const CMatrix& m) { return oracle::eig_hermitian(m, 1e-8); }

inline double pure_spectrum_error(const CMatrix& m) {
  const Eigen::VectorXd ev = spectrum(m);
  Eigen::VectorXd target = Eigen::VectorXd::Zero(ev.size());
  target[ev.size() - 1] = 1.0;
  return (ev - target).cwiseAbs().maxCoeff();
}

inline double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

inline double orthogonality_error(const Mat3& m) { return (m.transpose() * m - Mat3::Identity()).norm(); }

/// Stabilizer rotation written independently of so3 (Rodrigues).
inline Mat3 rotation_about_oracle(const Vec3& axis, double theta) { return oracle::axis_rotation(axis.normalized(), theta); }

/// Random two-qubit state whose marginals are β and γ (‖β‖ = ‖γ‖ < 1):
/// a random mixture of joint purifications and the product state.
inline TwoQubitBloch random_admissible_state(Rng& rng) {
  const double r = uniform(rng, 0.05, 0.95);
  const Vec3 beta = r * random_unit(rng), gamma = r * random_unit(rng);
  const JointFamily fam = joint_particular(beta, gamma);
  TwoQubitBloch prod;
  prod.beta = beta;
  prod.gamma = gamma;
  prod.delta = beta * gamma.transpose();
  double w[3] = {uniform(rng), uniform(rng), uniform(rng)};
  const double total = w[0] + w[1] + w[2];
  const TwoQubitBloch p1 = joint_purification(fam, uniform(rng, 0.0, 2.0 * std::numbers::pi));
  const TwoQubitBloch p2 = joint_purification(fam, uniform(rng, 0.0, 2.0 * std::numbers::pi));
  TwoQubitBloch s;
  s.beta = beta;
  s.gamma = gamma;
  s.delta = (w[0] * p1.delta + w[1] * p2.delta + w[2] * prod.delta) / total;
  return s;
}

}  // namespace purifykit::testing
