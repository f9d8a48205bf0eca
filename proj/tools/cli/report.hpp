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

#pragma once

#include <string>

#include "config.hpp"

namespace redsim::cli {

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(const std::string& data);

/// Digest of an input document, hashed over its canonical (sorted-key,
/// compact) serialization.
std::string input_digest(const json& inputs);

/// Rewrites every floating-point number in `doc` to 12 significant digits.
void round_numbers(json& doc);

json to_json(const Complex& z);
json to_json(const VectorXc& v);
json to_json(const MatrixXc& m);
json to_json(const Eigen::MatrixXd& m);
json to_json(const RVector<double>& v);

}  // namespace redsim::cli
