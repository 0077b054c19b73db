#pragma once

#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace purifykit {

using cplx = std::complex<double>;

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;
using CMatrix = Eigen::MatrixXcd;

/// Random engine used by every sampling routine. Callers own the state.
using Rng = std::mt19937_64;

/// Tolerance for state-validity checks (Hermiticity, trace, norms, purity).
inline constexpr double kStateTol = 1e-9;
/// Tolerance for algebraic identities that hold up to rounding.
inline constexpr double kAlgebraTol = 1e-12;

enum class Errc {
  not_hermitian,
  trace_not_one,
  bloch_norm_exceeded,
  seed_norm_exceeded,
  not_rotation,
  norm_mismatch,
  zero_vector,
  not_interior,
  not_jointly_purifiable,
  wrong_regime,
  not_a_state,
  zero_gamma,
  marginal_mismatch,
  unsupported_dimension,
  dimension_mismatch,
  parse_error,
  schema_error,
};

constexpr std::string_view to_string(Errc e) {
  switch (e) {
    case Errc::not_hermitian: return "not_hermitian";
    case Errc::trace_not_one: return "trace_not_one";
    case Errc::bloch_norm_exceeded: return "bloch_norm_exceeded";
    case Errc::seed_norm_exceeded: return "seed_norm_exceeded";
    case Errc::not_rotation: return "not_rotation";
    case Errc::norm_mismatch: return "norm_mismatch";
    case Errc::zero_vector: return "zero_vector";
    case Errc::not_interior: return "not_interior";
    case Errc::not_jointly_purifiable: return "not_jointly_purifiable";
    case Errc::wrong_regime: return "wrong_regime";
    case Errc::not_a_state: return "not_a_state";
    case Errc::zero_gamma: return "zero_gamma";
    case Errc::marginal_mismatch: return "marginal_mismatch";
    case Errc::unsupported_dimension: return "unsupported_dimension";
    case Errc::dimension_mismatch: return "dimension_mismatch";
    case Errc::parse_error: return "parse_error";
    case Errc::schema_error: return "schema_error";
  }
  return "unknown";
}

/// Input errors (parse/schema) are malformed input; everything else is a
/// domain error about the values themselves.
constexpr bool is_input_error(Errc e) {
  return e == Errc::parse_error || e == Errc::schema_error;
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Two-qubit Bloch coordinates: ρ = ¼(I₄ + Σβᵢσᵢ⊗I + Σγᵢ I⊗σᵢ + Σδₗₖσₗ⊗σₖ).
struct TwoQubitBloch {
  Vec3 beta = Vec3::Zero();
  Vec3 gamma = Vec3::Zero();
  Mat3 delta = Mat3::Zero();
};

}  // namespace purifykit
