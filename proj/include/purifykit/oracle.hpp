#pragma once

// Brute-force verification engines. Nothing here calls into the closed-form
// modules: the eigensolver, the Haar sampler and the stabilizer rotations
// are separate implementations.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "purifykit/core.hpp"

namespace purifykit::oracle {

struct HermitianEigen {
  Eigen::VectorXd values;  // ascending
  CMatrix vectors;         // columns, matching values
};

/// Cyclic complex Jacobi. Each pivot first rotates the phase of m(p,q) away
/// with diag(1, e^{-iφ}) and then applies a real plane rotation.
inline HermitianEigen eigh_hermitian(const CMatrix& m, double tol = kStateTol) {
  if (m.rows() != m.cols()) throw Error(Errc::dimension_mismatch, "eigh_hermitian: matrix not square");
  const double skew = m.size() == 0 ? 0.0 : (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (skew > tol) throw Error(Errc::not_hermitian, "eigh_hermitian: max |m - m^H| = " + std::to_string(skew));

  const Eigen::Index n = m.rows();
  CMatrix a = (m + m.adjoint()) * 0.5;
  CMatrix v = CMatrix::Identity(n, n);
  const double scale = std::max(a.norm(), std::numeric_limits<double>::min());

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-17 * scale) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        const cplx phase_conj = std::conj(a(p, q) / r);
        const double theta = 0.5 * std::atan2(2.0 * r, a(q, q).real() - a(p, p).real());
        const double c = std::cos(theta), s = std::sin(theta);

        // Columns p, q of a·U, then rows p, q of U^H·(a·U).
        for (Eigen::Index k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * phase_conj * akq;
          a(k, q) = s * akp + c * phase_conj * akq;
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * phase_conj * vkq;
          v(k, q) = s * vkp + c * phase_conj * vkq;
        }
        const cplx phase = std::conj(phase_conj);
        for (Eigen::Index k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() < a(y, y).real(); });

  HermitianEigen out{Eigen::VectorXd(n), CMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index j = order[static_cast<std::size_t>(i)];
    out.values[i] = a(j, j).real();
    out.vectors.col(i) = v.col(j);
  }
  return out;
}

inline Eigen::VectorXd eig_hermitian(const CMatrix& m, double tol = kStateTol) { return eigh_hermitian(m, tol).values; }

/// Uniform grid low, low + h, ..., high with `points` nodes (endpoints included).
struct GridSpec {
  int points = 10000;
  double range_low = 0.0;
  double range_high = 2.0 * std::numbers::pi;

  void validate() const {
    if (points < 2) throw Error(Errc::dimension_mismatch, "GridSpec: points must be >= 2");
    if (!(range_low < range_high)) throw Error(Errc::dimension_mismatch, "GridSpec: empty range");
  }
  double node(int k) const { return range_low + (range_high - range_low) * k / (points - 1); }
};

struct GridMax {
  double theta = 0.0;
  double value = -std::numeric_limits<double>::infinity();
};

template <class F>
GridMax grid_max_theta(F&& f, const GridSpec& grid = {}) {
  grid.validate();
  GridMax best;
  for (int k = 0; k < grid.points; ++k) {
    const double t = grid.node(k);
    const double val = f(t);
    if (val > best.value) best = {t, val};
  }
  return best;
}

/// Counterclockwise rotation by theta about unit k.
inline Mat3 axis_rotation(const Vec3& k, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Mat3 kx;
  kx << 0.0, -k.z(), k.y(), k.z(), 0.0, -k.x(), -k.y(), k.x(), 0.0;
  return c * Mat3::Identity() + s * kx + (1.0 - c) * k * k.transpose();
}

/// Haar rotation: Gram–Schmidt on a Gaussian matrix (Haar on O(3)), then the
/// last column is flipped when the determinant is negative.
inline Mat3 haar_rotation(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat3 g;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) g(i, j) = normal(rng);
  Mat3 q;
  for (int j = 0; j < 3; ++j) {
    Vec3 col = g.col(j);
    for (int k = 0; k < j; ++k) col -= q.col(k).dot(col) * q.col(k);
    q.col(j) = col.normalized();
  }
  if (q.determinant() < 0.0) q.col(2) = -q.col(2);
  return q;
}

struct SampledMax {
  Mat3 rotation = Mat3::Identity();
  double value = -std::numeric_limits<double>::infinity();
};

/// Max of objective over `samples` Haar rotations, or over rotations about
/// `fixed` (uniform angle) when a constraint vector is given.
template <class Objective>
SampledMax sampled_max_so3(Objective&& objective, long samples, Rng& rng,
                           const std::optional<Vec3>& fixed = std::nullopt) {
  if (samples < 1) throw Error(Errc::dimension_mismatch, "sampled_max_so3: samples must be >= 1");
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::optional<Vec3> axis;
  if (fixed && fixed->norm() > 0.0) axis = fixed->normalized();
  SampledMax best;
  for (long i = 0; i < samples; ++i) {
    const Mat3 r = axis ? axis_rotation(*axis, angle(rng)) : haar_rotation(rng);
    const double val = objective(r);
    if (val > best.value) best = {r, val};
  }
  return best;
}

}  // namespace purifykit::oracle
