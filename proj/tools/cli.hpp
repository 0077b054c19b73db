#pragma once

// Batch front end. run() is the whole program; main() only forwards argv
// and the standard streams, so tests drive it in-process.
//
// Exit codes: 0 success (JSON on stdout), 1 malformed input or usage,
// 2 domain error (JSON error object on stderr).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "purifykit/io.hpp"
#include "purifykit/purifykit.hpp"

namespace purifykit::cli {

using io::json;

inline constexpr const char* kTolEnv = "PURIFYKIT_TOL";
inline constexpr long kDefaultOracleSamples = 100000;
inline constexpr int kDefaultGrid = 10000;

struct Options {
  double tol = kStateTol;
  std::uint64_t seed = 1;
  std::string in;
  bool human = false;
  bool verify = false;
  std::string beta, gamma, beta0;
  std::string axis_angle = "[0,0,0]";
  double theta = 0.0;
  long oracle_samples = 0;
  int grid = 0;
  int n = 3;
};

namespace detail {

inline std::string read_input(const Options& opt, std::istream& in) {
  std::ostringstream buf;
  if (opt.in.empty() || opt.in == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream file(opt.in);
    if (!file) throw Error(Errc::parse_error, "cannot open input file " + opt.in);
    buf << file.rdbuf();
  }
  return buf.str();
}

inline io::State read_state(const Options& opt, std::istream& in) { return io::read_state_text(read_input(opt, in)); }

inline TwoQubitBloch as_two_qubit(const io::State& s, double tol) {
  if (const auto* m = std::get_if<CMatrix>(&s)) return two_qubit_to_bloch(*m, tol);
  if (const auto* b = std::get_if<TwoQubitBloch>(&s)) return *b;
  throw Error(Errc::schema_error, "expected a two-qubit state (4x4 matrix or beta/gamma/delta)");
}

inline Vec3 vec3_flag(const std::string& text, const char* name) {
  const json j = io::parse(text);
  if (!j.is_array() || j.size() != 3) throw Error(Errc::schema_error, std::string("--") + name + " must be a 3-element array");
  Vec3 v;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j[i].is_number()) throw Error(Errc::schema_error, std::string("--") + name + " entries must be numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

inline Eigen::VectorXd vector_flag(const std::string& text, const char* name) {
  const json j = io::parse(text);
  if (!j.is_array()) throw Error(Errc::schema_error, std::string("--") + name + " must be an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(Errc::schema_error, std::string("--") + name + " entries must be numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// Max deviation of the spectrum from {0, ..., 0, 1}.
inline double pure_spectrum_error(const CMatrix& m) {
  const Eigen::VectorXd ev = oracle::eig_hermitian(m);
  Eigen::VectorXd target = Eigen::VectorXd::Zero(ev.size());
  target[ev.size() - 1] = 1.0;
  return (ev - target).cwiseAbs().maxCoeff();
}

inline double nearest_grid_objective(const Mat3& e, const Mat3& d, const Vec3& gamma, double theta) {
  return (e.transpose() * d * oracle::axis_rotation(gamma.normalized(), theta)).trace();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// verbs

inline json cmd_decompose(const Options& opt, std::istream& in) {
  const io::State s = detail::read_state(opt, in);
  const auto* m = std::get_if<CMatrix>(&s);
  if (!m) throw Error(Errc::schema_error, "decompose expects a matrix file");
  if (m->rows() == 2) return io::to_json(io::QubitBloch{qubit_to_bloch(*m, opt.tol)});
  if (m->rows() == 4) return io::to_json(two_qubit_to_bloch(*m, opt.tol));
  throw Error(Errc::unsupported_dimension, "decompose handles dim 2 and 4; use `qudit decompose` for dim 3");
}

inline json cmd_reconstruct(const Options& opt, std::istream& in) {
  const io::State s = detail::read_state(opt, in);
  if (const auto* b = std::get_if<TwoQubitBloch>(&s)) return io::to_json(CMatrix(bloch_to_two_qubit(*b)));
  if (const auto* q = std::get_if<io::QubitBloch>(&s)) return io::to_json(CMatrix(bloch_to_qubit(q->beta, opt.tol)));
  if (const auto* q = std::get_if<qudit::QuditBloch>(&s)) return io::to_json(qudit::qudit_to_matrix(*q));
  throw Error(Errc::schema_error, "reconstruct expects Bloch coordinates");
}

inline Vec3 beta_from(const Options& opt, std::istream& in) {
  if (!opt.beta.empty()) return detail::vec3_flag(opt.beta, "beta");
  const io::State s = detail::read_state(opt, in);
  if (const auto* q = std::get_if<io::QubitBloch>(&s)) return q->beta;
  if (const auto* m = std::get_if<CMatrix>(&s)) return qubit_to_bloch(*m, opt.tol);
  throw Error(Errc::schema_error, "purify expects --beta or a one-qubit state file");
}

inline json cmd_purify(const Options& opt, std::istream& in) {
  const Vec3 beta = beta_from(opt, in);
  const Vec3 aa = detail::vec3_flag(opt.axis_angle, "axis-angle");
  const so3::Rotation3 c = so3::from_axis_angle({aa[0], aa[1], aa[2]});
  const PurificationFamily fam = particular_delta(beta, opt.tol);
  const TwoQubitBloch s = purification(fam, c);
  const CMatrix m = bloch_to_two_qubit(s);
  json out = {{"axis_angle", io::vector_to_json(aa)},
              {"matrix", io::to_json(m)},
              {"regime", std::string(to_string(fam.regime))},
              {"rotation", io::to_json(c)},
              {"state", io::to_json(s)}};
  if (opt.verify) {
    const double spec_err = detail::pure_spectrum_error(m);
    const double marg_err = (s.beta - beta).cwiseAbs().maxCoeff();
    out["verify"] = {{"marginal_error", marg_err},
                     {"spectrum_error", spec_err},
                     {"pass", spec_err <= 1e-9 && marg_err <= 1e-10}};
  }
  return out;
}

inline json cmd_joint_purify(const Options& opt, std::istream&) {
  if (opt.beta.empty() || opt.gamma.empty()) throw Error(Errc::schema_error, "joint-purify needs --beta and --gamma");
  const Vec3 beta = detail::vec3_flag(opt.beta, "beta");
  const Vec3 gamma = detail::vec3_flag(opt.gamma, "gamma");
  const JointFamily fam = joint_particular(beta, gamma, opt.tol);
  json out = {{"regime", std::string(to_string(fam.regime))}};
  TwoQubitBloch s;
  if (fam.regime == JointRegime::center) {
    const Vec3 aa = detail::vec3_flag(opt.axis_angle, "axis-angle");
    const so3::Rotation3 c = so3::from_axis_angle({aa[0], aa[1], aa[2]});
    s = joint_purification_center(fam, c);
    out["axis_angle"] = io::vector_to_json(aa);
  } else {
    s = joint_purification(fam, opt.theta);
    out["theta"] = opt.theta;
  }
  const CMatrix m = bloch_to_two_qubit(s);
  out["matrix"] = io::to_json(m);
  out["state"] = io::to_json(s);
  if (opt.verify) {
    const double spec_err = detail::pure_spectrum_error(m);
    const double marg_err = std::max((s.beta - beta).cwiseAbs().maxCoeff(), (s.gamma - gamma).cwiseAbs().maxCoeff());
    out["verify"] = {{"marginal_error", marg_err},
                     {"spectrum_error", spec_err},
                     {"pass", spec_err <= 1e-9 && marg_err <= 1e-10}};
  }
  return out;
}

inline json cmd_singlet_fraction(const Options& opt, std::istream& in) {
  const TwoQubitBloch rho = detail::as_two_qubit(detail::read_state(opt, in), opt.tol);
  const SingletFractionResult r = max_singlet_fraction(rho, opt.tol);
  json out = {{"branch", std::string(to_string(r.branch))},
              {"optimizer_delta", io::mat3_to_json(r.optimizer_delta)},
              {"value", r.value}};
  if (opt.oracle_samples > 0) {
    Rng rng(opt.seed);
    const double o = singlet_fraction_oracle(rho, opt.oracle_samples, rng);
    out["oracle"] = {{"gap", r.value - o}, {"samples", opt.oracle_samples}, {"seed", opt.seed}, {"value", o}};
  }
  return out;
}

inline json cmd_nearest_joint(const Options& opt, std::istream& in) {
  const TwoQubitBloch rho = detail::as_two_qubit(detail::read_state(opt, in), opt.tol);
  const NearestJointResult r = nearest_joint_purification(rho, opt.tol);
  json out = {{"distance", r.distance},
              {"f_max", r.f_max},
              {"fourier", {{"a", r.fourier.a}, {"b", r.fourier.b}, {"const", r.fourier.constant}}},
              {"minimizer", io::to_json(r.minimizer)},
              {"rotation", io::to_json(r.rotation)},
              {"theta_star", r.theta_star}};
  if (opt.grid > 0) {
    const JointFamily fam = joint_particular(rho.beta, rho.gamma, opt.tol);
    if (fam.regime == JointRegime::center) {
      Rng rng(opt.seed);
      const Mat3 m = rho.delta.transpose() * fam.delta_tilde;
      const auto best = oracle::sampled_max_so3([&](const Mat3& c) { return (m * c).trace(); }, opt.grid, rng);
      out["grid"] = {{"gap", r.f_max - best.value}, {"mode", "so3_samples"}, {"points", opt.grid}, {"value", best.value}};
    } else {
      const auto best = oracle::grid_max_theta(
          [&](double t) { return detail::nearest_grid_objective(rho.delta, fam.delta_tilde, fam.gamma, t); },
          oracle::GridSpec{opt.grid, 0.0, 2.0 * std::numbers::pi});
      out["grid"] = {{"gap", r.f_max - best.value}, {"mode", "theta_grid"}, {"points", opt.grid}, {"theta", best.theta},
                     {"value", best.value}};
    }
  }
  return out;
}

inline json cmd_qudit_decompose(const Options& opt, std::istream& in) {
  const io::State s = detail::read_state(opt, in);
  const auto* m = std::get_if<CMatrix>(&s);
  if (!m) throw Error(Errc::schema_error, "qudit decompose expects a matrix file");
  return io::to_json(qudit::matrix_to_qudit(*m, opt.tol));
}

inline json cmd_qudit_reconstruct(const Options& opt, std::istream& in) {
  const io::State s = detail::read_state(opt, in);
  const auto* q = std::get_if<qudit::QuditBloch>(&s);
  if (!q) throw Error(Errc::schema_error, "qudit reconstruct expects {\"n\", \"beta\"}");
  return io::to_json(qudit::qudit_to_matrix(*q));
}

inline json cmd_qudit_purity(const Options& opt, std::istream& in) {
  const io::State s = detail::read_state(opt, in);
  qudit::QuditBloch q;
  if (const auto* m = std::get_if<CMatrix>(&s)) {
    q = qudit::matrix_to_qudit(*m, opt.tol);
  } else if (const auto* p = std::get_if<qudit::QuditBloch>(&s)) {
    q = *p;
  } else {
    throw Error(Errc::schema_error, "qudit purity expects a matrix or {\"n\", \"beta\"}");
  }
  const qudit::QuditPurity p = qudit::purity_qudit(q, opt.tol);
  json out = {{"cup_residual", p.cup_residual}, {"is_pure", p.is_pure}, {"n", q.n}, {"norm_residual", p.norm_residual}};
  if (opt.verify) {
    const CMatrix rho = qudit::qudit_to_matrix(q);
    const double idem = detail::max_abs(rho * rho - rho);
    out["verify"] = {{"idempotence_residual", idem}, {"pass", (idem <= opt.tol) == p.is_pure}};
  }
  return out;
}

inline json cmd_qudit_seed(const Options& opt, std::istream&) {
  if (opt.beta0.empty()) throw Error(Errc::schema_error, "qudit seed needs --beta0");
  const qudit::QuditBloch q = qudit::density_from_seed(opt.n, detail::vector_flag(opt.beta0, "beta0"));
  json out = io::to_json(q);
  if (opt.verify) {
    const double lo = oracle::eig_hermitian(qudit::qudit_to_matrix(q)).minCoeff();
    out["verify"] = {{"min_eigenvalue", lo}, {"pass", lo >= -1e-10}};
  }
  return out;
}

/// Re-runs each closed form on the input state against its oracle.
inline json cmd_verify(const Options& opt, std::istream& in) {
  const io::State st = detail::read_state(opt, in);
  const TwoQubitBloch rho = detail::as_two_qubit(st, opt.tol);
  const CMatrix m = bloch_to_two_qubit(rho);
  json checks = json::array();
  bool all = true;
  const auto add = [&](const char* name, double gap, double tol) {
    const bool pass = gap <= tol;
    all = all && pass;
    checks.push_back({{"gap", gap}, {"name", name}, {"pass", pass}, {"tol", tol}});
  };

  add("round_trip", detail::max_abs(CMatrix(bloch_to_two_qubit(two_qubit_to_bloch(m, opt.tol))) - m), 1e-13);
  add("trace_product", std::abs(trace_product(rho, rho) - (m * m).trace().real()), 1e-12);

  Rng rng(opt.seed);
  const TwoQubitBloch p = purification(rho.beta, so3::random_rotation(rng), opt.tol);
  add("purification_spectrum", detail::pure_spectrum_error(bloch_to_two_qubit(p)), 1e-9);

  const long samples = opt.oracle_samples > 0 ? opt.oracle_samples : kDefaultOracleSamples;
  const double closed = max_singlet_fraction(rho, opt.tol).value;
  const double sampled = singlet_fraction_oracle(rho, samples, rng);
  add("singlet_fraction_oracle_gap", closed - sampled, 5e-3);
  add("singlet_fraction_oracle_excess", std::max(0.0, sampled - closed), 1e-10);

  if (can_jointly_purify(rho.beta, rho.gamma, opt.tol)) {
    const NearestJointResult r = nearest_joint_purification(rho, opt.tol);
    const JointFamily fam = joint_particular(rho.beta, rho.gamma, opt.tol);
    if (fam.regime != JointRegime::center) {
      const int points = opt.grid > 0 ? opt.grid : kDefaultGrid;
      const auto best = oracle::grid_max_theta(
          [&](double t) { return detail::nearest_grid_objective(rho.delta, fam.delta_tilde, fam.gamma, t); },
          oracle::GridSpec{points, 0.0, 2.0 * std::numbers::pi});
      add("nearest_joint_grid", std::abs(r.f_max - best.value), 1e-7);
    }
    const double direct = (CMatrix(bloch_to_two_qubit(r.minimizer)) - m).norm();
    add("nearest_joint_distance", std::abs(r.distance - direct), 1e-10);
  }
  return {{"checks", std::move(checks)}, {"pass", all}};
}

// ---------------------------------------------------------------------------

/// One "key: value" line per scalar top-level field.
inline std::string human_summary(const std::string& verb, const json& j) {
  std::ostringstream os;
  os << verb << "\n";
  for (const auto& [key, value] : j.items()) {
    if (value.is_primitive()) os << "  " << key << ": " << value.dump() << "\n";
  }
  return os.str();
}

inline std::optional<double> tol_from_env() {
  const char* raw = std::getenv(kTolEnv);
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v > 0.0)) throw Error(Errc::parse_error, std::string(kTolEnv) + " is not a positive number");
  return v;
}

inline json error_payload(const Error& e) { return {{"error", std::string(to_string(e.code()))}, {"message", e.what()}}; }

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options opt;
  try {
    if (const auto env = tol_from_env()) opt.tol = *env;
  } catch (const Error& e) {
    err << error_payload(e).dump() << "\n";
    return 1;
  }

  CLI::App app{"Purifications and joint purifications of qubit states", "purifykit"};
  app.require_subcommand(1);
  app.add_option("--tol", opt.tol, "state-validity tolerance (default $PURIFYKIT_TOL or 1e-9)")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "seed for all sampling");
  app.add_flag("--human", opt.human, "print a short text summary instead of JSON");

  const auto with_input = [&](CLI::App* sub) { sub->add_option("--in", opt.in, "input JSON file ('-' or absent: stdin)"); };
  const auto with_verify = [&](CLI::App* sub) { sub->add_flag("--verify", opt.verify, "check the result against the oracle"); };

  auto* decompose = app.add_subcommand("decompose", "matrix -> Bloch coordinates (dim 2 or 4)");
  with_input(decompose);
  auto* reconstruct = app.add_subcommand("reconstruct", "Bloch coordinates -> matrix");
  with_input(reconstruct);

  auto* purify = app.add_subcommand("purify", "purification of a qubit state");
  with_input(purify);
  with_verify(purify);
  purify->add_option("--beta", opt.beta, "Bloch vector as a JSON array");
  purify->add_option("--axis-angle", opt.axis_angle, "[theta, phi, psi] of the SO(3) parameter");

  auto* joint = app.add_subcommand("joint-purify", "joint purification of two qubit states");
  with_verify(joint);
  joint->add_option("--beta", opt.beta, "first marginal as a JSON array")->required();
  joint->add_option("--gamma", opt.gamma, "second marginal as a JSON array")->required();
  joint->add_option("--theta", opt.theta, "SO(2) parameter");
  joint->add_option("--axis-angle", opt.axis_angle, "[theta, phi, psi] when beta = gamma = 0");

  auto* singlet = app.add_subcommand("singlet-fraction", "maximal singlet fraction");
  with_input(singlet);
  singlet->add_option("--oracle-samples", opt.oracle_samples, "also run the sampling oracle")->check(CLI::NonNegativeNumber);

  auto* nearest = app.add_subcommand("nearest-joint", "nearest joint purification");
  with_input(nearest);
  nearest->add_option("--grid", opt.grid, "also run the grid-search oracle with N points")->check(CLI::NonNegativeNumber);

  auto* qud = app.add_subcommand("qudit", "generalized Bloch picture, n = 2, 3");
  qud->require_subcommand(1);
  auto* q_dec = qud->add_subcommand("decompose", "matrix -> {n, beta}");
  with_input(q_dec);
  auto* q_rec = qud->add_subcommand("reconstruct", "{n, beta} -> matrix");
  with_input(q_rec);
  auto* q_pur = qud->add_subcommand("purity", "purity test in Bloch coordinates");
  with_input(q_pur);
  with_verify(q_pur);
  auto* q_seed = qud->add_subcommand("seed", "density matrix from a seed vector");
  with_verify(q_seed);
  q_seed->add_option("--n", opt.n, "dimension")->required();
  q_seed->add_option("--beta0", opt.beta0, "seed vector as a JSON array")->required();

  auto* verify = app.add_subcommand("verify", "closed forms vs oracles on one state");
  with_input(verify);
  verify->add_option("--oracle-samples", opt.oracle_samples, "SO(3) samples (default 1e5)")->check(CLI::NonNegativeNumber);
  verify->add_option("--grid", opt.grid, "theta grid points (default 1e4)")->check(CLI::NonNegativeNumber);

  std::vector<const char*> argv{"purifykit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    json result;
    std::string verb;
    if (*decompose) { verb = "decompose"; result = cmd_decompose(opt, in); }
    else if (*reconstruct) { verb = "reconstruct"; result = cmd_reconstruct(opt, in); }
    else if (*purify) { verb = "purify"; result = cmd_purify(opt, in); }
    else if (*joint) { verb = "joint-purify"; result = cmd_joint_purify(opt, in); }
    else if (*singlet) { verb = "singlet-fraction"; result = cmd_singlet_fraction(opt, in); }
    else if (*nearest) { verb = "nearest-joint"; result = cmd_nearest_joint(opt, in); }
    else if (*q_dec) { verb = "qudit decompose"; result = cmd_qudit_decompose(opt, in); }
    else if (*q_rec) { verb = "qudit reconstruct"; result = cmd_qudit_reconstruct(opt, in); }
    else if (*q_pur) { verb = "qudit purity"; result = cmd_qudit_purity(opt, in); }
    else if (*q_seed) { verb = "qudit seed"; result = cmd_qudit_seed(opt, in); }
    else { verb = "verify"; result = cmd_verify(opt, in); }
    out << (opt.human ? human_summary(verb, result) : io::write_result(result));
    return 0;
  } catch (const Error& e) {
    if (e.code() == Errc::not_jointly_purifiable && !opt.beta.empty() && !opt.gamma.empty()) {
      // joint-purify reports the two norms so scripts can see the mismatch.
      const double bn = detail::vec3_flag(opt.beta, "beta").norm();
      const double gn = detail::vec3_flag(opt.gamma, "gamma").norm();
      err << json{{"beta_norm", bn}, {"error", "norm_mismatch"}, {"gamma_norm", gn}}.dump() << "\n";
      return 2;
    }
    err << error_payload(e).dump() << "\n";
    return is_input_error(e.code()) ? 1 : 2;
  } catch (const std::exception& e) {
    err << json{{"error", "input_error"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
}

}  // namespace purifykit::cli
