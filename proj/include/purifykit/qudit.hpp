#pragma once

// Generalized Bloch representation of a single n-level system,
//     ρ = (1/n)(Iₙ + Σ βᵢλᵢ),
// in the generalized Gell-Mann basis normalized to Tr(λᵢλⱼ) = 2δᵢⱼ.
// Supported for n ∈ {2, 3}.

#include <cmath>
#include <string>
#include <vector>

#include "purifykit/bloch.hpp"

namespace purifykit::qudit {

struct GellMannBasis {
  int n = 0;
  std::vector<CMatrix> lambdas;  // n² − 1 matrices

  int size() const { return static_cast<int>(lambdas.size()); }
};

inline void require_supported(int n) {
  if (n != 2 && n != 3)
    throw Error(Errc::unsupported_dimension, "qudit dimension " + std::to_string(n) + " (supported: 2, 3)");
}

namespace detail {

/// Conventional order: for each column j = 1..n−1, the symmetric and
/// antisymmetric matrices for rows i < j, then the j-th diagonal one. For
/// n = 2 these are σx, σy, σz; for n = 3 they are λ₁..λ₈.
inline GellMannBasis build_basis(int n) {
  GellMannBasis b;
  b.n = n;
  const cplx i_unit{0.0, 1.0};
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      CMatrix sym = CMatrix::Zero(n, n);
      sym(i, j) = sym(j, i) = 1.0;
      b.lambdas.push_back(sym);
      CMatrix anti = CMatrix::Zero(n, n);
      anti(i, j) = -i_unit;
      anti(j, i) = i_unit;
      b.lambdas.push_back(anti);
    }
    CMatrix diag = CMatrix::Zero(n, n);
    const double scale = std::sqrt(2.0 / (j * (j + 1.0)));
    for (int k = 0; k < j; ++k) diag(k, k) = scale;
    diag(j, j) = -j * scale;
    b.lambdas.push_back(diag);
  }
  return b;
}

}  // namespace detail

inline const GellMannBasis& gellmann_basis(int n) {
  require_supported(n);
  static const GellMannBasis two = detail::build_basis(2);
  static const GellMannBasis three = detail::build_basis(3);
  return n == 2 ? two : three;
}

/// Totally symmetric structure constants of the anticommutator,
///     dₖₗᵢ = ¼·Tr({λₖ, λₗ}λᵢ),
/// so that {λₖ, λₗ} = (4/n)δₖₗIₙ + 2Σᵢ dₖₗᵢλᵢ.
struct DTensor {
  int n = 0;
  int m = 0;  // n² − 1
  std::vector<double> d;

  double operator()(int k, int l, int i) const {
    return d[static_cast<std::size_t>((k * m + l) * m + i)];
  }
};

inline DTensor d_tensor(const GellMannBasis& basis) {
  DTensor t;
  t.n = basis.n;
  t.m = basis.size();
  t.d.assign(static_cast<std::size_t>(t.m * t.m * t.m), 0.0);
  for (int k = 0; k < t.m; ++k)
    for (int l = 0; l < t.m; ++l) {
      const CMatrix anti = basis.lambdas[k] * basis.lambdas[l] + basis.lambdas[l] * basis.lambdas[k];
      for (int i = 0; i < t.m; ++i)
        t.d[static_cast<std::size_t>((k * t.m + l) * t.m + i)] = 0.25 * (anti * basis.lambdas[i]).trace().real();
    }
  return t;
}

inline const DTensor& d_tensor_for(int n) {
  require_supported(n);
  static const DTensor two = d_tensor(gellmann_basis(2));
  static const DTensor three = d_tensor(gellmann_basis(3));
  return n == 2 ? two : three;
}

/// Largest entrywise deviation of {λₖ, λₗ} from (4/n)δₖₗIₙ + 2Σ dₖₗᵢλᵢ.
inline double anticommutator_residual(const GellMannBasis& basis, const DTensor& t) {
  double worst = 0.0;
  const int n = basis.n;
  for (int k = 0; k < t.m; ++k)
    for (int l = 0; l < t.m; ++l) {
      CMatrix rebuilt = CMatrix::Identity(n, n) * (k == l ? 4.0 / n : 0.0);
      for (int i = 0; i < t.m; ++i) rebuilt += 2.0 * t(k, l, i) * basis.lambdas[i];
      const CMatrix anti = basis.lambdas[k] * basis.lambdas[l] + basis.lambdas[l] * basis.lambdas[k];
      worst = std::max(worst, (anti - rebuilt).cwiseAbs().maxCoeff());
    }
  return worst;
}

/// (x ∪ y)ᵢ = Σⱼₖ dᵢⱼₖ xⱼ yₖ.
inline Eigen::VectorXd cup_product(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const DTensor& t) {
  if (x.size() != t.m || y.size() != t.m)
    throw Error(Errc::dimension_mismatch, "cup_product: vectors must have length " + std::to_string(t.m));
  Eigen::VectorXd out = Eigen::VectorXd::Zero(t.m);
  for (int i = 0; i < t.m; ++i)
    for (int j = 0; j < t.m; ++j)
      for (int k = 0; k < t.m; ++k) out[i] += t(i, j, k) * x[j] * y[k];
  return out;
}

struct QuditBloch {
  int n = 0;
  Eigen::VectorXd beta;
};

inline void require_length(const QuditBloch& q) {
  require_supported(q.n);
  if (q.beta.size() != q.n * q.n - 1)
    throw Error(Errc::dimension_mismatch, "qudit Bloch vector for n = " + std::to_string(q.n) + " needs length " +
                                              std::to_string(q.n * q.n - 1));
}

inline CMatrix qudit_to_matrix(const QuditBloch& q) {
  require_length(q);
  const GellMannBasis& basis = gellmann_basis(q.n);
  CMatrix rho = CMatrix::Identity(q.n, q.n);
  for (int i = 0; i < basis.size(); ++i) rho += q.beta[i] * basis.lambdas[i];
  return rho / static_cast<double>(q.n);
}

/// βᵢ = (n/2)·Tr(ρλᵢ).
inline QuditBloch matrix_to_qudit(const CMatrix& rho, double tol = kStateTol) {
  if (rho.rows() != rho.cols()) throw Error(Errc::dimension_mismatch, "matrix_to_qudit: matrix not square");
  const int n = static_cast<int>(rho.rows());
  require_supported(n);
  const CMatrix h = validated_density(rho, tol);
  const GellMannBasis& basis = gellmann_basis(n);
  QuditBloch q{n, Eigen::VectorXd(basis.size())};
  for (int i = 0; i < basis.size(); ++i) q.beta[i] = 0.5 * n * (h * basis.lambdas[i]).trace().real();
  return q;
}

/// ρ = M² with M = (1/n)(κIₙ + Σβ₀ᵢλᵢ), κ = +√((n² − 2‖β₀‖²)/n), giving
/// β = (2κ/n)β₀ + (β₀ ∪ β₀)/n.
inline QuditBloch density_from_seed(int n, const Eigen::VectorXd& beta0) {
  require_supported(n);
  const DTensor& t = d_tensor_for(n);
  if (beta0.size() != t.m)
    throw Error(Errc::dimension_mismatch, "density_from_seed: seed must have length " + std::to_string(t.m));
  const double load = beta0.squaredNorm();
  const double cap = n * n / 2.0;
  if (load > cap) throw Error(Errc::seed_norm_exceeded, "|beta0|^2 = " + std::to_string(load) + " > n^2/2");
  const double kappa = std::sqrt((n * n - 2.0 * load) / n);
  return {n, (2.0 * kappa / n) * beta0 + cup_product(beta0, beta0, t) / n};
}

struct QuditPurity {
  double norm_residual = 0.0;  // |⟨β,β⟩ − (n² − n)/2|
  double cup_residual = 0.0;   // ‖(n − 2)β − β∪β‖
  bool is_pure = false;
};

inline QuditPurity purity_qudit(const QuditBloch& q, double tol = kStateTol) {
  require_length(q);
  const DTensor& t = d_tensor_for(q.n);
  QuditPurity p;
  p.norm_residual = std::abs(q.beta.squaredNorm() - (q.n * q.n - q.n) / 2.0);
  p.cup_residual = ((q.n - 2.0) * q.beta - cup_product(q.beta, q.beta, t)).norm();
  p.is_pure = p.norm_residual <= tol && p.cup_residual <= tol;
  return p;
}

/// Pure iff ⟨β,β⟩ = (n² − n)/2 and (n − 2)β = β ∪ β.
inline bool is_pure_qudit(const QuditBloch& q, double tol = kStateTol) { return purity_qudit(q, tol).is_pure; }

}  // namespace purifykit::qudit
