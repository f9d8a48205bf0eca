// Copyright 2026 The redsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "config.hpp"

#include <fstream>
#include <sstream>

namespace redsim::cli {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw ConfigError(field + ": " + message);
}

std::string join(const std::string& field, const std::string& key) { return field.empty() ? key : field + "." + key; }

std::string index(const std::string& field, std::size_t k) { return field + "[" + std::to_string(k) + "]"; }

double number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number, got " + std::string(v.type_name()));
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(field, "expected a finite number");
  return x;
}

const json& array(const json& v, const std::string& field) {
  if (!v.is_array()) fail(field, "expected an array, got " + std::string(v.type_name()));
  return v;
}

std::size_t parse_index(const json& v, const std::string& field) {
  if (!v.is_number_integer() || v.get<long long>() < 0) fail(field, "expected a nonnegative integer");
  return v.get<std::size_t>();
}

// Runs a library validator and reports its message against `field`.
template <typename Fn>
void check(const std::string& field, Fn&& fn) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    fail(field, e.what());
  }
}

RVector<double> number_list(const json& doc, const std::string& field) {
  const auto& a = array(doc, field);
  RVector<double> w(static_cast<Eigen::Index>(a.size()));
  for (std::size_t k = 0; k < a.size(); ++k) w(static_cast<Eigen::Index>(k)) = number(a[k], index(field, k));
  return w;
}

VectorXc parse_complex_vector(const json& doc, const std::string& field) {
  const auto& a = array(doc, field);
  VectorXc v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t k = 0; k < a.size(); ++k) v(static_cast<Eigen::Index>(k)) = parse_complex(a[k], index(field, k));
  return v;
}

Dims parse_dims(const json& doc, const std::string& field) {
  const auto& a = array(doc, field);
  Dims dims;
  for (std::size_t k = 0; k < a.size(); ++k) dims.push_back(parse_index(a[k], index(field, k)));
  return dims;
}

ParsedState parse_pure_schmidt(const json& doc, const std::string& field) {
  const RVector<double> w = parse_weights(require_field(doc, "weights", field), join(field, "weights"));
  const std::size_t d = static_cast<std::size_t>(w.size());
  if (doc.contains("dims") && parse_dims(doc["dims"], join(field, "dims")) != Dims{d, d})
    fail(join(field, "dims"), "must be [d, d] with d the number of weights");
  return {"pure-schmidt", schmidt_state(w), w, MixedClassSpec::pure(w)};
}

ParsedState parse_mixed_class(const json& doc, const std::string& field) {
  MixedClassSpec spec;
  spec.weights = number_list(require_field(doc, "weights", field), join(field, "weights"));
  const std::string rows_field = join(field, "amplitude_rows");
  const auto& rows = array(require_field(doc, "amplitude_rows", field), rows_field);
  for (std::size_t k = 0; k < rows.size(); ++k) spec.amplitude_rows.push_back(parse_complex_vector(rows[k], index(rows_field, k)));
  if (spec.amplitude_rows.empty()) fail(rows_field, "needs at least one row");
  if (spec.amplitude_rows.size() != static_cast<std::size_t>(spec.weights.size()))
    fail(rows_field, "has " + std::to_string(spec.amplitude_rows.size()) + " rows but there are " +
                         std::to_string(spec.weights.size()) + " weights");
  for (std::size_t k = 0; k < spec.amplitude_rows.size(); ++k)
    if (spec.amplitude_rows[k].size() != spec.amplitude_rows[0].size())
      fail(index(rows_field, k), "all rows must have the same length");
  const std::size_t d = spec.dimension();
  if (doc.contains("dims") && parse_dims(doc["dims"], join(field, "dims")) != Dims{d, d})
    fail(join(field, "dims"), "must be [d, d] with d the row length");
  check(field, [&] { spec.validate(); });
  return {"mixed-class", spec.density(), std::nullopt, spec};
}

ParsedState parse_dense(const json& doc, const std::string& field) {
  const Dims dims = parse_dims(require_field(doc, "dims", field), join(field, "dims"));
  const MatrixXc m = parse_complex_matrix(require_field(doc, "matrix", field), join(field, "matrix"));
  std::optional<DensityMatrix> rho;
  check(field, [&] {
    rho.emplace(m, dims);
    rho->require_valid();
  });
  return {"dense", *rho, std::nullopt, std::nullopt};
}

}  // namespace

DensityMatrix ParsedState::density() const {
  if (const auto* psi = std::get_if<PureState>(&state)) return psi->density();
  return std::get<DensityMatrix>(state);
}

std::size_t ParsedState::local_dimension() const {
  const Dims& dims = std::visit([](const auto& s) -> const Dims& { return s.dims(); }, state);
  return dims.front();
}

const json& require_field(const json& doc, const std::string& key, const std::string& field) {
  if (!doc.is_object()) fail(field.empty() ? "<root>" : field, "expected an object");
  if (!doc.contains(key)) fail(join(field, key), "missing required field");
  return doc[key];
}

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line and column.
    std::size_t line = 1, column = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ConfigError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": invalid JSON (" +
                      e.what() + ")");
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path.string());
}

Complex parse_complex(const json& doc, const std::string& field) {
  if (doc.is_number()) return {number(doc, field), 0.0};
  if (!doc.is_array() || doc.size() != 2) fail(field, "expected a number or a [re, im] pair");
  return {number(doc[0], field + ".re"), number(doc[1], field + ".im")};
}

MatrixXc parse_complex_matrix(const json& doc, const std::string& field) {
  const auto& rows = array(doc, field);
  if (rows.empty()) fail(field, "matrix has no rows");
  const std::size_t n = array(rows[0], index(field, 0)).size();
  MatrixXc m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = array(rows[i], index(field, i));
    if (row.size() != n) fail(index(field, i), "rows must all have " + std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = parse_complex(row[j], index(index(field, i), j));
  }
  return m;
}

RVector<double> parse_weights(const json& doc, const std::string& field) {
  const RVector<double> w = number_list(doc, field);
  try {
    validate_weights(w, field.c_str());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return w;
}

RVector<double> parse_weight_list(const std::string& text, const std::string& field) {
  json a = json::array();
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      fail(field, "'" + item + "' is not a number");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) fail(field, "'" + item + "' is not a number");
    a.push_back(x);
  }
  return parse_weights(a, field);
}

ParsedState parse_state_spec(const json& doc, const std::string& field) {
  const json& kind = require_field(doc, "kind", field);
  if (!kind.is_string()) fail(join(field, "kind"), "expected a string");
  const auto k = kind.get<std::string>();
  if (k == "pure-schmidt") return parse_pure_schmidt(doc, field);
  if (k == "mixed-class") return parse_mixed_class(doc, field);
  if (k == "dense") return parse_dense(doc, field);
  fail(join(field, "kind"), "unknown kind '" + k + "' (expected pure-schmidt, mixed-class or dense)");
}

PhaseMatrix resolve_theta(const std::string& source, std::size_t d, json* echo) {
  if (echo) *echo = source;
  if (source == "paper-uniform") return PhaseMatrix::bilinear(d, 2.0 * kPi / static_cast<double>(d));
  if (source == "zero") return PhaseMatrix::zero(d);
  if (source == "paper-2x2") {
    if (d != 2) fail("--theta", "paper-2x2 needs d = 2, the states have d = " + std::to_string(d));
    return PhaseMatrix::bilinear(2, kPi);
  }
  const json doc = read_json_file(source);
  const bool wrapped = doc.is_object();
  const json& m = wrapped ? require_field(doc, "theta", "") : doc;
  const std::string field = wrapped ? "theta" : source;
  const auto& rows = array(m, field);
  Eigen::MatrixXd theta(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
  if (rows.size() != d) fail(field, "expected a " + std::to_string(d) + " x " + std::to_string(d) + " matrix");
  for (std::size_t i = 0; i < d; ++i) {
    const auto& row = array(rows[i], index(field, i));
    if (row.size() != d) fail(index(field, i), "expected " + std::to_string(d) + " entries");
    for (std::size_t j = 0; j < d; ++j)
      theta(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = number(row[j], index(index(field, i), j));
  }
  if (echo) *echo = m;
  return PhaseMatrix(theta);
}

}  // namespace redsim::cli
