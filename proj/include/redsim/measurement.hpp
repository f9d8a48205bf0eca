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

#include <cstdint>

#include "redsim/outcome.hpp"
#include "redsim/random.hpp"

namespace redsim {

/// Kraus operators {M_j} acting on the tensor factor `target`.
class Measurement {
 public:
  explicit Measurement(std::vector<MatrixXc> kraus, Subsystems target = {});

  const std::vector<MatrixXc>& kraus() const { return kraus_; }
  const MatrixXc& operator[](std::size_t j) const { return kraus_[j]; }
  const Subsystems& target() const { return target_; }
  std::size_t num_outcomes() const { return kraus_.size(); }
  std::size_t dimension() const { return static_cast<std::size_t>(kraus_.front().rows()); }

  /// Same operators, bound to a different set of subsystems.
  Measurement on(Subsystems target) const { return Measurement(kraus_, std::move(target)); }

  /// max |(sum_j M_j^dagger M_j - I)_ab|
  double completeness_error() const;
  bool is_complete(double tol = kCompletenessTolerance) const { return completeness_error() <= tol; }

 private:
  std::vector<MatrixXc> kraus_;
  Subsystems target_;
};

/// Real d x d matrix of phases theta_mm' (radians, meaningful modulo 2 pi).
class PhaseMatrix {
 public:
  explicit PhaseMatrix(Eigen::MatrixXd theta);

  static PhaseMatrix zero(std::size_t d) { return PhaseMatrix(Eigen::MatrixXd::Zero(d, d)); }
  /// theta_mm' = scale * m * m'. scale = pi gives the two-qubit saturating
  /// choice, scale = 2 pi / d the maximally entangling one for uniform weights.
  static PhaseMatrix bilinear(std::size_t d, double scale);

  std::size_t dimension() const { return static_cast<std::size_t>(theta_.rows()); }
  double operator()(std::size_t m, std::size_t mp) const {
    return theta_(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(mp));
  }
  const Eigen::MatrixXd& matrix() const { return theta_; }

 private:
  Eigen::MatrixXd theta_;
};

/// |P(j,j')> = (1/d) sum_{m,m'} exp(i[2 pi/d^2 (dj+j')(dm+m') + theta_mm']) |m m'>.
VectorXc rpbes_vector(std::size_t d, std::size_t j, std::size_t jp, const PhaseMatrix& theta);

/// Projective measurement onto the d^2 vectors |P(j,j')>, outcome index
/// d*j + j'. Default target is the supplier's pair of shares {1, 2}.
Measurement rpbes_basis(std::size_t d, const PhaseMatrix& theta, Subsystems target = {1, 2});

/// Q_j = tr(M_j rho M_j^dagger); each state is renormalized, outcomes with
/// Q_j < 1e-12 are dropped. States keep all subsystems.
OutcomeDistribution apply_measurement(const DensityMatrix& rho, const Measurement& m);
OutcomeDistribution apply_measurement(const PureState& psi, const Measurement& m);

/// Rank-one projectors onto the columns of a Haar unitary.
Measurement random_projective_measurement(std::size_t dim, Rng& rng, Subsystems target = {});
Measurement random_projective_measurement(std::size_t dim, std::uint64_t seed, Subsystems target = {});

/// n_outcomes Kraus operators: the dim x dim blocks of the first dim columns of
/// a Haar unitary on C^(dim * n_outcomes).
Measurement random_kraus_channel(std::size_t dim, std::size_t n_outcomes, Rng& rng, Subsystems target = {});
Measurement random_kraus_channel(std::size_t dim, std::size_t n_outcomes, std::uint64_t seed, Subsystems target = {});

/// Single-outcome measurement with the given unitary.
Measurement unitary_channel(const MatrixXc& u, Subsystems target = {});

Measurement computational_basis_measurement(std::size_t dim, Subsystems target = {});

}  // namespace redsim
