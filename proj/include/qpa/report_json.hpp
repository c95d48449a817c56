// Copyright 2026 The qpa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON state files and report serialization.
//
// State schema:
//   {"probs": [p0, p1, ...],
//    "eve_states": [ [[ [re, im], ... ], ...], ... ]}
// or {"preset": "tilted-qubit"} with an optional numeric "param".
// A bare number is accepted in place of [re, 0].

#ifndef QPA_REPORT_JSON_HPP_
#define QPA_REPORT_JSON_HPP_

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qpa/cq_state.hpp"
#include "qpa/error.hpp"
#include "qpa/exponents.hpp"
#include "qpa/quantities.hpp"
#include "qpa/verification.hpp"

namespace qpa {

using Json = nlohmann::json;

namespace detail {

inline std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline Complex parse_entry(const Json& e, const std::string& where) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw ParseError(where + ": expected [re, im] or a number");
}

inline ComplexMatrix parse_matrix(const Json& m, const std::string& where) {
  if (!m.is_array() || m.empty()) throw ParseError(where + ": expected a non-empty matrix");
  const auto rows = static_cast<Index>(m.size());
  if (!m[0].is_array()) throw ParseError(where + ": expected rows as arrays");
  const auto cols = static_cast<Index>(m[0].size());
  ComplexMatrix out(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = m[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw ParseError(where + ": row " + std::to_string(i) + " has the wrong length");
    }
    for (Index j = 0; j < cols; ++j) {
      out(i, j) = parse_entry(row[static_cast<std::size_t>(j)],
                              where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
  }
  return out;
}

}  // namespace detail

/// Parses state JSON text. Syntax errors and schema errors throw ParseError;
/// well-formed but invalid states throw InvalidStateError.
inline CQState parse_state_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t byte = e.byte == 0 ? 0 : e.byte - 1;
    throw ParseError("malformed JSON at " + detail::line_column(text, byte));
  }
  if (!doc.is_object()) throw ParseError("state JSON must be an object");
  if (doc.contains("preset")) {
    if (!doc["preset"].is_string()) throw ParseError("\"preset\" must be a string");
    std::optional<double> param;
    if (doc.contains("param")) {
      if (!doc["param"].is_number()) throw ParseError("\"param\" must be a number");
      param = doc["param"].get<double>();
    }
    return preset(doc["preset"].get<std::string>(), param);
  }
  if (!doc.contains("probs") || !doc["probs"].is_array()) {
    throw ParseError("state JSON needs a \"probs\" array");
  }
  if (!doc.contains("eve_states") || !doc["eve_states"].is_array()) {
    throw ParseError("state JSON needs an \"eve_states\" array");
  }
  std::vector<double> probs;
  for (const auto& p : doc["probs"]) {
    if (!p.is_number()) throw ParseError("probs entries must be numbers");
    probs.push_back(p.get<double>());
  }
  std::vector<HermitianMatrix> rhos;
  std::size_t a = 0;
  for (const auto& m : doc["eve_states"]) {
    ComplexMatrix entries = detail::parse_matrix(m, "eve_states[" + std::to_string(a) + "]");
    if (entries.rows() != entries.cols()) {
      throw InvalidStateError("dimension_mismatch",
                              "eve_states[" + std::to_string(a) + "] is not square");
    }
    if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > kStateTolerance) {
      throw InvalidStateError("eve_state_not_psd",
                              "eve_states[" + std::to_string(a) + "] is not Hermitian");
    }
    rhos.emplace_back(entries);
    ++a;
  }
  return make_cq_state(std::move(probs), std::move(rhos));
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline CQState load_state_file(const std::string& path) {
  return parse_state_json(read_file(path));
}

inline Json state_to_json(const CQState& s) {
  Json states = Json::array();
  for (const auto& r : s.eve_states()) {
    Json m = Json::array();
    for (Index i = 0; i < r.dim(); ++i) {
      Json row = Json::array();
      for (Index j = 0; j < r.dim(); ++j) row.push_back({r(i, j).real(), r(i, j).imag()});
      m.push_back(row);
    }
    states.push_back(m);
  }
  return {{"probs", s.probs()}, {"eve_states", states}};
}

/// Non-finite values become the strings "inf", "-inf", "nan".
inline Json number_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;
  return x;
}

inline Json to_json(const QuantityReport& r) {
  Json values = Json::object();
  for (const auto& [k, v] : r.values) values[k] = number_json(v);
  return {{"units", r.units}, {"values", values}};
}

inline Json to_json(const BoundReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"s", number_json(row.s)},
                    {"lhs", number_json(row.lhs)},
                    {"rhs", number_json(row.rhs)}});
  }
  Json checks = Json::array();
  for (const auto& c : r.side_checks) {
    checks.push_back({{"name", c.name},
                      {"lhs", number_json(c.lhs)},
                      {"rhs", number_json(c.rhs)},
                      {"passed", c.passed}});
  }
  return {{"theorem", r.theorem},
          {"state", r.state_name},
          {"family", r.family},
          {"v", r.v},
          {"M", r.M},
          {"lhs", number_json(r.lhs)},
          {"rows", rows},
          {"best_s", number_json(r.best_s)},
          {"slack", number_json(r.slack)},
          {"passed", r.all_passed()},
          {"side_checks", checks},
          {"units", "nats"}};
}

inline Json to_json(const ExponentCurve& c) {
  Json rows = Json::array();
  for (const auto& r : c.rows) {
    rows.push_back({{"R", number_json(r.R)},
                    {"e_H", number_json(r.e_H.value)},
                    {"s_star_H", number_json(r.e_H.argmax)},
                    {"e_H_q", number_json(r.e_H_q.value)},
                    {"s_star_Hq", number_json(r.e_H_q.argmax)},
                    {"e_phi_q", number_json(r.e_phi_q.value)},
                    {"t_star", number_json(r.e_phi_q.argmax)},
                    {"e_d_lower", number_json(r.e_d_lower)}});
  }
  return {{"units", "nats"}, {"rows", rows}};
}

inline Json to_json(const RatePoint& p) {
  return {{"R", number_json(p.R)},
          {"generation_rate", number_json(p.generation_rate)},
          {"equivocation", number_json(p.equivocation)},
          {"min_leak_rate", number_json(p.min_leak_rate)},
          {"units", "nats"}};
}

}  // namespace qpa

#endif  // QPA_REPORT_JSON_HPP_
