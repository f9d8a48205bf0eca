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

// Remote preparation of a bipartite entangled state. The supplier holds
// shares 1 and 2 of |psi>_01 (x) |chi>_23 (0-based: Alice = 0, supplier = 1,2,
// Bob = 3), measures them in the rpbes basis, and broadcasts (j, j'); Alice
// and Bob undo the outcome-dependent phases so every branch ends in the same
// state.

#pragma once

#include "redsim/measurement.hpp"

namespace redsim {

/// Ensemble of d x d states sum_l p_l |psi_l><psi_l| with every
/// |psi_l> = sum_k a_k^(l) |k k> diagonal in one fixed (computational) basis.
struct MixedClassSpec {
  RVector<double> weights;
  std::vector<VectorXc> amplitude_rows;

  /// Single-term spec with amplitudes sqrt(schmidt_weights).
  static MixedClassSpec pure(const RVector<double>& schmidt_weights);

  std::size_t dimension() const { return static_cast<std::size_t>(amplitude_rows.front().size()); }
  std::size_t num_terms() const { return amplitude_rows.size(); }
  void validate(double tol = tolerance()) const;
  /// The d x d bipartite density matrix this spec describes.
  DensityMatrix density() const;
};

struct CorrectionUnitaries {
  MatrixXc alice;  // diag exp(i 2 pi j' m / d)
  MatrixXc bob;    // diag exp(i 2 pi (d j + j') m' / d^2)
};

struct ClassicalCost {
  double bits_to_alice = 0.0;
  double bits_to_bob = 0.0;
};

struct ProtocolResult {
  std::size_t dimension = 0;
  /// Alice-Bob state after each supplier outcome, before correction. Labels
  /// are {j, j'}.
  OutcomeDistribution outcomes;
  /// Same order as outcomes, after Alice's and Bob's unitaries.
  std::vector<State> corrected_states;
  State final_state;
  double classical_bits_alice = 0.0;
  double classical_bits_bob = 0.0;
  /// min over pairs of corrected states of their fidelity.
  double min_pairwise_fidelity = 0.0;
  /// Pure: 1 - min fidelity to the predicted state. Mixed: max entrywise
  /// deviation from the predicted density matrix.
  double max_prediction_error = 0.0;
};

/// sum_k sqrt(w_k) |k k>.
PureState schmidt_state(const RVector<double>& weights);

CorrectionUnitaries correction_unitaries(std::size_t d, std::size_t j, std::size_t jp);

ClassicalCost classical_cost(std::size_t d);

/// |F> = sum_{m,m'} e^{-i theta_mm'} sqrt(lambda_m eta_m') |m m'>.
PureState predicted_final_state(const RVector<double>& lambda, const RVector<double>& eta, const PhaseMatrix& theta);

/// sum_{l,l'} p_l q_l' |phi_ll'><phi_ll'| with
/// |phi_ll'> = sum_{k,k'} a_k^(l) b_k'^(l') e^{-i theta_kk'} |k k'>.
DensityMatrix predicted_final_state(const MixedClassSpec& a, const MixedClassSpec& b, const PhaseMatrix& theta);

ProtocolResult run_rpbes_pure(const RVector<double>& lambda, const RVector<double>& eta, const PhaseMatrix& theta);

/// Each (l, l') pure branch is propagated on its own and the branches are
/// recombined per outcome, so no d^4 x d^4 density matrix is formed.
ProtocolResult run_rpbes_mixed_class(const MixedClassSpec& a, const MixedClassSpec& b, const PhaseMatrix& theta);

/// Throws unless w is a nonnegative vector summing to 1 within tol.
void validate_weights(const RVector<double>& w, const char* what, double tol = tolerance());

}  // namespace redsim
