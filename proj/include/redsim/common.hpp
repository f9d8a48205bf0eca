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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace redsim {

template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
template <typename Real>
using RMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

using Complex = std::complex<double>;
using VectorXc = CVector<double>;
using MatrixXc = CMatrix<double>;

/// Ordered subsystem dimensions, row-major tensor order (subsystem 0 is the
/// most significant digit of a basis index).
using Dims = std::vector<std::size_t>;
/// Subsystem indices into a Dims list.
using Subsystems = std::vector<std::size_t>;

/// Global numeric tolerance used for state validity checks. Defaults to 1e-10.
double tolerance();
void set_tolerance(double tol);
/// Applies RED_SIM_TOLERANCE from the environment if it is set; throws
/// std::invalid_argument unless it parses as a positive number. Returns the
/// tolerance in effect afterwards.
double load_tolerance_from_env();

/// Outcomes with probability below this are dropped from distributions.
inline constexpr double kZeroProbability = 1e-12;
/// Singular values below this do not contribute to a Schmidt rank.
inline constexpr double kSingularValueCutoff = 1e-12;
/// Completeness tolerance for Kraus sets.
inline constexpr double kCompletenessTolerance = 1e-9;

inline constexpr double kPi = 3.14159265358979323846;

inline std::size_t total_dimension(const Dims& dims) {
  std::size_t d = 1;
  for (auto k : dims) d *= k;
  return d;
}

std::string to_string(const Dims& dims);

}  // namespace redsim
