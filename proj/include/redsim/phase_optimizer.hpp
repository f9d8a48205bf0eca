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

// Maximizes the concurrence of the prepared state
//   |F> = sum_{m,m'} e^{-i theta_mm'} sqrt(lambda_m eta_m') |m m'>
// over the phase matrix theta.

#pragma once

#include <cstdint>

#include "redsim/measurement.hpp"

namespace redsim {

/// Closed form 2 { sum_{k>k'} sum_{m>m'} lambda_k lambda_k' eta_m eta_m'
///   |e^{i(theta_km + theta_k'm')} - e^{i(theta_km' + theta_k'm)}|^2 }^{1/2}.
double concurrence_F(const RVector<double>& lambda, const RVector<double>& eta, const PhaseMatrix& theta);

struct OptimizerOptions {
  std::size_t restarts = 8;
  std::uint64_t seed = 0;
  std::size_t max_iters = 500;  // coordinate sweeps per restart
  double tol = 1e-9;            // stop when a sweep improves C by less
  bool start_from_baseline = true;  // restart 0 starts at theta = 2 pi m m' / d
};

struct OptimizationResult {
  PhaseMatrix theta_star = PhaseMatrix::zero(1);
  double c_star = 0.0;
  /// Value at theta_mm' = 2 pi m m' / d.
  double baseline_c = 0.0;
  std::size_t iterations = 0;  // sweeps used by the winning restart
  bool converged = false;
  std::size_t best_restart = 0;
  std::vector<double> restart_values;
};

/// Coordinate ascent over the (d-1)^2 phases left after pinning the first row
/// and column to zero, golden-section search along each coordinate, best of
/// `restarts` starts (ties go to the lower restart index).
OptimizationResult optimize_phases(const RVector<double>& lambda, const RVector<double>& eta,
                                   const OptimizerOptions& options = {});

}  // namespace redsim
