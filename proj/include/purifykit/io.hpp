#pragma once

// JSON state files.
//   ComplexMatrix:  {"dim": n, "matrix": [[{"re": x, "im": y}, ...], ...]}
//   TwoQubitBloch:  {"beta": [b1,b2,b3], "gamma": [...], "delta": [[...],[...],[...]]}
//   Qubit Bloch:    {"beta": [b1,b2,b3]}
//   QuditBloch:     {"n": n, "beta": [...]}
// Objects serialize with sorted keys; doubles use shortest round-trip form.

#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"

#include "purifykit/bloch.hpp"
#include "purifykit/qudit.hpp"
#include "purifykit/so3.hpp"

namespace purifykit::io {

using nlohmann::json;

struct QubitBloch {
  Vec3 beta = Vec3::Zero();
};

using State = std::variant<CMatrix, TwoQubitBloch, QubitBloch, qudit::QuditBloch>;

namespace detail {

inline const json& require_key(const json& j, const char* key, const char* schema) {
  if (!j.is_object()) throw Error(Errc::schema_error, std::string(schema) + ": expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw Error(Errc::schema_error, std::string(schema) + ": missing key \"" + key + "\"");
  return *it;
}

inline double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw Error(Errc::schema_error, where + ": expected a number");
  return j.get<double>();
}

inline Eigen::VectorXd vector(const json& j, const std::string& where) {
  if (!j.is_array()) throw Error(Errc::schema_error, where + ": expected an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number(j[i], where);
  return v;
}

inline Vec3 vec3(const json& j, const std::string& where) {
  const Eigen::VectorXd v = vector(j, where);
  if (v.size() != 3) throw Error(Errc::schema_error, where + ": expected 3 entries");
  return v;
}

inline Mat3 mat3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw Error(Errc::schema_error, where + ": expected a 3x3 array");
  Mat3 m;
  for (int r = 0; r < 3; ++r) m.row(r) = vec3(j[static_cast<std::size_t>(r)], where).transpose();
  return m;
}

}  // namespace detail

template <class Derived>
json vector_to_json(const Eigen::MatrixBase<Derived>& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

/// Row-major nested arrays.
inline json mat3_to_json(const Mat3& m) {
  json out = json::array();
  for (int r = 0; r < 3; ++r) out.push_back(vector_to_json(m.row(r)));
  return out;
}

inline json to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({{"re", m(r, c).real()}, {"im", m(r, c).imag()}});
    rows.push_back(std::move(row));
  }
  return {{"dim", m.rows()}, {"matrix", std::move(rows)}};
}

inline json to_json(const TwoQubitBloch& s) {
  return {{"beta", vector_to_json(s.beta)}, {"gamma", vector_to_json(s.gamma)}, {"delta", mat3_to_json(s.delta)}};
}

inline json to_json(const QubitBloch& s) { return {{"beta", vector_to_json(s.beta)}}; }

inline json to_json(const qudit::QuditBloch& q) { return {{"n", q.n}, {"beta", vector_to_json(q.beta)}}; }

inline json to_json(const so3::Rotation3& r) { return mat3_to_json(r.matrix()); }

inline json to_json(const State& s) {
  return std::visit([](const auto& v) { return to_json(v); }, s);
}

inline CMatrix matrix_from_json(const json& j) {
  const json& dim_j = detail::require_key(j, "dim", "matrix");
  const json& rows = detail::require_key(j, "matrix", "matrix");
  if (!dim_j.is_number_integer() || dim_j.get<long long>() <= 0)
    throw Error(Errc::schema_error, "matrix: \"dim\" must be a positive integer");
  const auto dim = static_cast<std::size_t>(dim_j.get<long long>());
  if (!rows.is_array() || rows.size() != dim)
    throw Error(Errc::schema_error, "matrix: \"matrix\" must have " + std::to_string(dim) + " rows");
  CMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < dim; ++r) {
    if (!rows[r].is_array() || rows[r].size() != dim)
      throw Error(Errc::schema_error, "matrix: row " + std::to_string(r) + " must have " + std::to_string(dim) + " entries");
    for (std::size_t c = 0; c < dim; ++c) {
      const json& e = rows[r][c];
      const std::string where = "matrix[" + std::to_string(r) + "][" + std::to_string(c) + "]";
      const double re = detail::number(detail::require_key(e, "re", where.c_str()), where + ".re");
      const double im = detail::number(detail::require_key(e, "im", where.c_str()), where + ".im");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = cplx{re, im};
    }
  }
  return m;
}

inline TwoQubitBloch two_qubit_from_json(const json& j) {
  TwoQubitBloch s;
  s.beta = detail::vec3(detail::require_key(j, "beta", "two-qubit bloch"), "beta");
  s.gamma = detail::vec3(detail::require_key(j, "gamma", "two-qubit bloch"), "gamma");
  s.delta = detail::mat3(detail::require_key(j, "delta", "two-qubit bloch"), "delta");
  return s;
}

inline qudit::QuditBloch qudit_from_json(const json& j) {
  const json& n = detail::require_key(j, "n", "qudit bloch");
  if (!n.is_number_integer()) throw Error(Errc::schema_error, "qudit bloch: \"n\" must be an integer");
  return {n.get<int>(), detail::vector(detail::require_key(j, "beta", "qudit bloch"), "beta")};
}

/// Picks the schema by its keys.
inline State read_state(const json& j) {
  if (!j.is_object()) throw Error(Errc::schema_error, "state: expected a JSON object");
  if (j.contains("matrix") || j.contains("dim")) return matrix_from_json(j);
  if (j.contains("n")) return qudit_from_json(j);
  if (j.contains("gamma") || j.contains("delta")) return two_qubit_from_json(j);
  if (j.contains("beta")) return QubitBloch{detail::vec3(j["beta"], "beta")};
  throw Error(Errc::schema_error, "state: missing key \"matrix\", \"beta\" or \"n\"");
}

/// Parses JSON text; failures report 1-based line and column.
inline json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(Errc::parse_error, "line " + std::to_string(line) + ", column " + std::to_string(col));
  }
}

inline State read_state_text(std::string_view text) { return read_state(parse(text)); }

inline std::string write_result(const json& j) { return j.dump(2) + "\n"; }

}  // namespace purifykit::io
