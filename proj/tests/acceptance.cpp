// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Oracles here work on explicit matrices (Jacobi spectra,
// index-contraction partial traces, grid and Haar searches).

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "golden_cases.hpp"
#include "support.hpp"

namespace pk = purifykit;
namespace so3 = purifykit::so3;
namespace qd = purifykit::qudit;
using namespace purifykit::testing;
using std::numbers::pi;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "failed: ";
      detail << what << "; ";
      pass = false;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double marginal_error(const pk::CMatrix& m, const pk::Vec3& beta, const pk::Vec3& gamma) {
  return std::max(max_abs(pk::CMatrix(trace_out_second(m)) - pk::CMatrix(qubit_matrix(beta))),
                  max_abs(pk::CMatrix(trace_out_first(m)) - pk::CMatrix(qubit_matrix(gamma))));
}

double matrix_hs(const pk::TwoQubitBloch& a, const pk::TwoQubitBloch& b) {
  const pk::Mat4c d = pk::bloch_to_two_qubit(a) - pk::bloch_to_two_qubit(b);
  return std::sqrt(std::max(0.0, (d * d).trace().real()));
}

// 1. Purification soundness over all three regimes.
void purification_soundness(Verdict& v) {
  auto rng = make_rng(1001);
  const auto t0 = Clock::now();
  double spec = 0.0, marg = 0.0;
  int counts[3] = {0, 0, 0};
  for (int t = 0; t < 1000; ++t) {
    pk::Vec3 beta;
    if (t % 10 == 0) beta = pk::Vec3::Zero();
    else if (t % 10 == 1) beta = random_unit(rng);
    else beta = random_vector(rng, 0.0, 1.0);
    const so3::Rotation3 c(pk::oracle::haar_rotation(rng), 1e-12);
    const pk::PurificationFamily fam = pk::particular_delta(beta);
    counts[static_cast<int>(fam.regime)]++;
    const pk::CMatrix m = pk::bloch_to_two_qubit(pk::purification(fam, c));
    spec = std::max(spec, pure_spectrum_error(m));
    marg = std::max(marg, max_abs(pk::CMatrix(trace_out_second(m)) - pk::CMatrix(qubit_matrix(beta))));
  }
  const double secs = seconds_since(t0);
  v.require(spec <= 1e-9, "spectrum error " + fmt(spec));
  v.require(marg <= 1e-10, "marginal error " + fmt(marg));
  v.require(secs < 5.0, "runtime " + fmt(secs) + " s");
  v.require(counts[0] > 0 && counts[1] > 0 && counts[2] > 0, "regime coverage");
  v.detail << "1000 pairs (center " << counts[0] << ", interior " << counts[1] << ", boundary " << counts[2]
           << "), max spectrum err " << fmt(spec) << ", max marginal err " << fmt(marg) << ", " << fmt(secs) << " s";
}

// 2. Every purification reached by a second-factor unitary is δ̃·C.
void parametrization_completeness(Verdict& v) {
  auto rng = make_rng(1002);
  const pk::Vec3 beta(0.3, -0.2, 0.5);
  const pk::PurificationFamily fam = pk::particular_delta(beta);
  const pk::Mat4c base = pk::bloch_to_two_qubit(pk::purification(fam, so3::Rotation3::identity()));
  const pk::Mat3 inv = fam.delta_particular.inverse();
  double orth = 0.0, det = 0.0;
  for (int t = 0; t < 200; ++t) {
    const pk::Mat4c u = kron_oracle(pk::Mat2c::Identity(), random_su2(rng));
    const pk::Mat4c p = u * base * u.adjoint();
    const pk::Mat3 c = inv * pk::two_qubit_to_bloch(pk::CMatrix(p)).delta;
    orth = std::max(orth, orthogonality_error(c));
    det = std::max(det, std::abs(c.determinant() - 1.0));
  }
  v.require(orth <= 1e-9, "orthogonality " + fmt(orth));
  v.require(det <= 1e-9, "determinant " + fmt(det));
  v.detail << "200 projectors, max |CᵀC − I|_F " << fmt(orth) << ", max |det C − 1| " << fmt(det);
}

// 3. Joint purification marginals, θ-injectivity, boundary uniqueness.
void joint_purification(Verdict& v) {
  auto rng = make_rng(1003);
  double marg = 0.0, min_sep = 1e300, boundary_spread = 0.0;
  int generic = 0, boundary = 0, center = 0;
  for (int t = 0; t < 500; ++t) {
    double r;
    if (t % 50 == 0) r = 0.0;
    else if (t % 10 == 1) r = 1.0;
    else r = uniform(rng, 0.01, 0.99);
    const pk::Vec3 beta = r * random_unit(rng), gamma = r * random_unit(rng);
    const pk::JointFamily fam = pk::joint_particular(beta, gamma);
    std::vector<pk::TwoQubitBloch> states;
    for (int k = 0; k < 8; ++k) {
      const double theta = 2.0 * pi * k / 8;
      states.push_back(fam.regime == pk::JointRegime::center
                           ? pk::joint_purification_center(fam, so3::stabilizer_rotation(pk::Vec3::UnitZ(), theta))
                           : pk::joint_purification(fam, theta));
      marg = std::max(marg, marginal_error(pk::bloch_to_two_qubit(states.back()), beta, gamma));
    }
    double lo = 1e300, hi = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i)
      for (std::size_t j = i + 1; j < states.size(); ++j) {
        const double d = matrix_hs(states[i], states[j]);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
      }
    switch (fam.regime) {
      case pk::JointRegime::generic: ++generic; min_sep = std::min(min_sep, lo); break;
      case pk::JointRegime::boundary: ++boundary; boundary_spread = std::max(boundary_spread, hi); break;
      case pk::JointRegime::center: ++center; break;
    }
  }
  v.require(marg <= 1e-10, "marginal error " + fmt(marg));
  v.require(min_sep > 1e-9, "generic min separation " + fmt(min_sep));
  v.require(boundary_spread <= 1e-11, "boundary spread " + fmt(boundary_spread));
  v.require(generic > 0 && boundary > 0, "regime coverage");
  v.detail << "500 pairs x 8 theta (generic " << generic << ", boundary " << boundary << ", center " << center
           << "), max marginal err " << fmt(marg) << ", min generic separation " << fmt(min_sep)
           << ", max boundary spread " << fmt(boundary_spread);
}

// 4. Werner states, det < 0 branch.
void singlet_werner(Verdict& v) {
  auto rng = make_rng(1004);
  const auto t0 = Clock::now();
  double formula = 0.0, worst_gap = 0.0, worst_excess = 0.0;
  for (double p : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
    pk::TwoQubitBloch w;
    w.delta = -p * pk::Mat3::Identity();
    const pk::SingletFractionResult r = pk::max_singlet_fraction(w);
    formula = std::max(formula, std::abs(r.value - (1.0 + 3.0 * p) / 4.0));
    v.require(r.branch == pk::SingletBranch::det_neg, "branch at p = " + fmt(p));
    const double o = pk::singlet_fraction_oracle(w, 100000, rng);
    worst_gap = std::max(worst_gap, r.value - o);
    worst_excess = std::max(worst_excess, o - r.value);
  }
  const double secs = seconds_since(t0);
  v.require(formula <= 1e-12, "formula error " + fmt(formula));
  v.require(worst_gap <= 5e-3, "oracle gap " + fmt(worst_gap));
  v.require(worst_excess <= 1e-12, "oracle above closed form by " + fmt(worst_excess));
  v.require(secs < 30.0, "runtime " + fmt(secs) + " s");
  v.detail << "6 Werner states, max |value − (1+3p)/4| " << fmt(formula) << ", max oracle gap " << fmt(worst_gap)
           << ", " << fmt(secs) << " s";
}

// 5. Random states with det δ > 0.
void singlet_positive_det(Verdict& v) {
  auto rng = make_rng(1005);
  double worst_gap = 0.0, worst_excess = -1.0;
  int found = 0;
  while (found < 20) {
    const pk::TwoQubitBloch rho = pk::two_qubit_to_bloch(random_density(4, rng));
    if (rho.delta.determinant() <= 0.0) continue;
    ++found;
    const pk::SingletFractionResult r = pk::max_singlet_fraction(rho);
    v.require(r.branch == pk::SingletBranch::det_nonneg, "branch");
    const so3::SignedSvd3 svd = so3::signed_svd3(rho.delta);
    const double expected = 0.25 * (1.0 + svd.sigma[0] + svd.sigma[1] - svd.sigma[2]);
    v.require(std::abs(r.value - expected) <= 1e-12, "formula");
    const double o = pk::singlet_fraction_oracle(rho, 100000, rng);
    worst_gap = std::max(worst_gap, r.value - o);
    worst_excess = std::max(worst_excess, o - r.value);
  }
  v.require(worst_excess <= 1e-12, "oracle above closed form by " + fmt(worst_excess));
  v.require(worst_gap <= 5e-3, "oracle gap " + fmt(worst_gap));
  v.detail << "20 states, max gap " << fmt(worst_gap) << ", closed form - oracle >= " << fmt(-worst_excess);
}

// 6. Nearest joint purification against a 10⁴-point θ-grid.
void nearest_joint(Verdict& v) {
  auto rng = make_rng(1006);
  double value_gap = 0.0, dist_gap = 0.0;
  for (int t = 0; t < 50; ++t) {
    const pk::TwoQubitBloch rho = random_admissible_state(rng);
    v.require(pk::is_state(rho), "generator produced a non-state");
    const pk::NearestJointResult r = pk::nearest_joint_purification(rho);
    const pk::JointFamily fam = pk::joint_particular(rho.beta, rho.gamma);
    const pk::Mat3 m = rho.delta.transpose() * fam.delta_tilde;
    const pk::oracle::GridMax best = pk::oracle::grid_max_theta(
        [&](double th) { return (m * rotation_about_oracle(fam.gamma, th)).trace(); },
        pk::oracle::GridSpec{10000, 0.0, 2.0 * pi});
    value_gap = std::max(value_gap, std::abs(r.f_max - best.value));
    dist_gap = std::max(dist_gap, std::abs(r.distance - matrix_hs(rho, r.minimizer)));
  }
  v.require(value_gap <= 1e-7, "f_max vs grid " + fmt(value_gap));
  v.require(dist_gap <= 1e-10, "distance vs direct " + fmt(dist_gap));
  v.detail << "50 states, max |f_max − grid max| " << fmt(value_gap) << ", max |distance − direct HS| "
           << fmt(dist_gap);
}

// 7. Product states are equidistant from all their joint purifications.
void equidistance(Verdict& v) {
  auto rng = make_rng(1007);
  double spread = 0.0, value = 0.0;
  for (int t = 0; t < 100; ++t) {
    const double r = uniform(rng, 0.01, 1.0);
    const pk::Vec3 beta = r * random_unit(rng), gamma = r * random_unit(rng);
    const pk::JointFamily fam = pk::joint_particular(beta, gamma);
    const pk::Mat3 m = (beta * gamma.transpose()).transpose() * fam.delta_tilde;
    double lo = 1e300, hi = -1e300;
    for (int k = 0; k < 1000; ++k) {
      const double f = (m * rotation_about_oracle(gamma, 2.0 * pi * k / 1000)).trace();
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
    const pk::EquidistanceReport rep = pk::equidistance_check(beta, gamma, 1000);
    spread = std::max({spread, hi - lo, rep.spread});
    value = std::max({value, std::abs(lo - r * r), std::abs(hi - r * r), std::abs(rep.value - r * r)});
  }
  v.require(spread <= 1e-10, "spread " + fmt(spread));
  v.require(value <= 1e-10, "value " + fmt(value));
  v.detail << "100 product states, max spread " << fmt(spread) << ", max |F − |β|²| " << fmt(value);
}

// 8. Trace-product formula against the matrix product.
void trace_product(Verdict& v) {
  auto rng = make_rng(1008);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const pk::CMatrix a = random_density(4, rng), b = random_density(4, rng);
    const double f = pk::trace_product(pk::two_qubit_to_bloch(a), pk::two_qubit_to_bloch(b));
    worst = std::max(worst, std::abs(f - (a * b).trace().real()));
  }
  v.require(worst <= 1e-12, "error " + fmt(worst));
  v.detail << "1000 pairs, max error " << fmt(worst);
}

// 9. Qudit picture for n = 3, and its n = 2 degeneration.
void qudit(Verdict& v) {
  auto rng = make_rng(1009);
  const double residual = qd::anticommutator_residual(qd::gellmann_basis(3), qd::d_tensor_for(3));
  v.require(residual <= 1e-12, "anticommutator residual " + fmt(residual));

  int disagreements = 0, pure_found = 0;
  for (int t = 0; t < 550; ++t) {
    const pk::CMatrix rho = t < 500 ? random_hermitian_trace_one(3, rng) : random_pure(3, rng);
    const bool idempotent = max_abs(rho * rho - rho) <= 1e-9;
    pure_found += idempotent;
    if (qd::is_pure_qudit(qd::matrix_to_qudit(rho), 1e-9) != idempotent) ++disagreements;
  }
  v.require(disagreements == 0, std::to_string(disagreements) + " purity disagreements");
  v.require(pure_found == 50, "constructed pure states not idempotent");

  double min_eig = 1.0;
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    Eigen::VectorXd b0(8);
    for (int i = 0; i < 8; ++i) b0[i] = normal(rng);
    b0 *= std::sqrt(4.5) * std::pow(uniform(rng), 1.0 / 8.0) / b0.norm();
    min_eig = std::min(min_eig, spectrum(qd::qudit_to_matrix(qd::density_from_seed(3, b0)))[0]);
  }
  v.require(min_eig >= -1e-10, "seed min eigenvalue " + fmt(min_eig));

  double cup2 = 0.0;
  int qubit_mismatch = 0;
  for (int t = 0; t < 500; ++t) {
    const pk::Vec3 x = random_vector(rng, 0.0, 1.5), y = random_vector(rng, 0.0, 1.5);
    cup2 = std::max(cup2, qd::cup_product(x, y, qd::d_tensor_for(2)).cwiseAbs().maxCoeff());
    const pk::Vec3 b = t % 2 ? random_unit(rng) : x;
    if (qd::is_pure_qudit({2, b}, 1e-10) != (std::abs(b.norm() - 1.0) <= 1e-10)) ++qubit_mismatch;
  }
  v.require(cup2 == 0.0, "n = 2 cup product " + fmt(cup2));
  v.require(qubit_mismatch == 0, "n = 2 purity mismatches");
  v.detail << "residual " << fmt(residual) << ", 550 purity checks (" << disagreements << " disagreements), seed min eig "
           << fmt(min_eig) << ", n = 2 max |cup| " << fmt(cup2);
}

// 10. Golden CLI outputs, byte-identical across two runs.
void cli_determinism(Verdict& v) {
  const std::string dir = PURIFYKIT_GOLDEN_DIR;
  const auto cases = pk::golden::load_cases(dir);
  int ok = 0;
  for (const auto& c : cases) {
    const std::string first = pk::golden::run_case(c, dir);
    const std::string second = pk::golden::run_case(c, dir);
    const std::string expected = pk::golden::read_file(pk::golden::golden_path(c, dir));
    if (first != second) v.require(false, c.name + " differs between runs");
    else if (first != expected) v.require(false, c.name + " differs from golden");
    else ++ok;
  }
  v.detail << ok << "/" << cases.size() << " golden cases identical";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Verdict&)>>> criteria{
      {"purification soundness", purification_soundness},
      {"parametrization completeness", parametrization_completeness},
      {"joint purification", joint_purification},
      {"singlet fraction, det < 0 (Werner)", singlet_werner},
      {"singlet fraction, det > 0", singlet_positive_det},
      {"nearest joint purification", nearest_joint},
      {"product-state equidistance", equidistance},
      {"trace-product formula", trace_product},
      {"qudit picture, n = 3 and n = 2", qudit},
      {"CLI golden determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": " << v.detail.str()
              << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
