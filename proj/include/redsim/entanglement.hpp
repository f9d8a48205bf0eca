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

// Concurrence (pure states of any local dimension, Wootters' closed form for
// two-qubit mixed states), entanglement of formation, and Wootters' optimal
// decomposition in which every pure member has the same concurrence.

#pragma once

#include <array>

#include "redsim/outcome.hpp"

namespace redsim {

struct DecompositionTerm {
  double weight = 0.0;
  PureState state;
};

/// Ensemble {p_l, |psi_l>} with rho = sum_l p_l |psi_l><psi_l|.
using Decomposition = std::vector<DecompositionTerm>;

DensityMatrix reconstruct(const Decomposition& decomposition);

/// sqrt(2 (1 - sum_k lambda_k^2)) for squared Schmidt weights lambda.
double concurrence_from_weights(const RVector<double>& weights);

/// Concurrence of a pure state across the cut part_a | rest.
double concurrence_pure(const PureState& psi, const Subsystems& part_a = {0});

/// The decreasing square roots mu_1..mu_4 of the eigenvalues of
/// rho (Y x Y) rho^* (Y x Y).
Eigen::Vector4d wootters_spectrum(const DensityMatrix& rho);

/// max(0, mu_1 - mu_2 - mu_3 - mu_4). rho must be 4x4 with dims [2,2].
double concurrence_two_qubit(const DensityMatrix& rho);

/// tr(rho) * C(rho / tr(rho)) for an unnormalized positive 4x4 matrix. The
/// Wootters expression is homogeneous of degree one, so no division (and no
/// validity check) is needed; branch weights of measurement trees use this.
double weighted_concurrence_two_qubit(const MatrixXc& unnormalized);

/// Dispatches on the state kind: pure states of two subsystems use the pure
/// formula, density matrices must be two-qubit. Density matrices of rank one
/// on other dims are not accepted.
double concurrence(const State& state);

double binary_entropy(double p);

/// h((1 + sqrt(1 - C^2)) / 2). Only defined on 0 <= C <= 1.
double entanglement_of_formation(double c);

/// sum_j Q_j C(sigma_j).
double average_concurrence(const OutcomeDistribution& dist);

/// At most four pure states whose average concurrence equals
/// concurrence_two_qubit(rho), each member having exactly that concurrence.
Decomposition optimal_equal_concurrence_decomposition(const DensityMatrix& rho);

namespace detail {

/// Y x Y with Y the Pauli-y matrix (real: antidiagonal -1, 1, 1, -1).
Eigen::Matrix4cd spin_flip();

struct Takagi {
  MatrixXc u;                // unitary
  RVector<double> values;    // nonnegative, descending
};

/// Takagi factorization A = U diag(values) U^T of a complex symmetric matrix,
/// via the real symmetric embedding [[Re A, Im A], [Im A, -Re A]].
Takagi takagi(const MatrixXc& a);

/// Phases phi with sum_j w_j e^{i phi_j} = 0 for four descending weights with
/// w_0 <= w_1 + w_2 + w_3.
std::array<double, 4> closing_phases(const std::array<double, 4>& w);

}  // namespace detail

}  // namespace redsim
