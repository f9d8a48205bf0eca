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

// Loading of JSON input documents for the command-line tool: state
// specifications, phase matrices and weight lists. Every failure raises
// ConfigError naming the offending field (or line and column for syntax
// errors), and every parsed state passes the library's own validation.

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "redsim/measurement.hpp"
#include "redsim/protocol.hpp"

namespace redsim::cli {

using nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state specification after loading. `pure_weights` is set for
/// "pure-schmidt", `mixed` for "mixed-class" (and for "pure-schmidt", as
/// its single-term class); `state` is always set.
struct ParsedState {
  std::string kind;
  State state;
  std::optional<RVector<double>> pure_weights;
  std::optional<MixedClassSpec> mixed;

  DensityMatrix density() const;
  std::size_t local_dimension() const;
};

json read_json_file(const std::filesystem::path& path);
json parse_json_text(const std::string& text, const std::string& source);

ParsedState parse_state_spec(const json& doc, const std::string& field);

RVector<double> parse_weights(const json& doc, const std::string& field);
RVector<double> parse_weight_list(const std::string& text, const std::string& field);

MatrixXc parse_complex_matrix(const json& doc, const std::string& field);
Complex parse_complex(const json& doc, const std::string& field);

/// Resolves a --theta argument: "paper-2x2", "paper-uniform", "zero" or a
/// path to a JSON file holding a d x d matrix of reals (bare or under
/// "theta").
PhaseMatrix resolve_theta(const std::string& source, std::size_t d, json* echo = nullptr);

const json& require_field(const json& doc, const std::string& key, const std::string& field);

}  // namespace redsim::cli
