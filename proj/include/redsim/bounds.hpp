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

// Monte Carlo checks of the supplier bound C_14 <= C_12 C_34 and its chain
// extension. A strategy is a sequence of local measurement rounds; within one
// strategy the conditioned outcome tree is expanded exactly, so the achieved
// average concurrence is a deterministic function of the sampled operators.
//
// Qubit layout for a single supplier: Alice 0, supplier {1, 2}, Bob 3. For a
// chain of N links, link k occupies qubits (2k, 2k+1); intermediate node k
// (1 <= k < N) holds qubits (2k-1, 2k); the endpoints hold 0 and 2N-1.

#pragma once

#include <functional>
#include <optional>
#include <span>

#include "redsim/entanglement.hpp"
#include "redsim/measurement.hpp"

namespace redsim {

enum class Party { Supplier, Alice, Bob };

enum class MeasurementSource {
  Fixed,
  RandomProjective,
  RandomKraus,
  RandomUnitary,
  /// Projective or Kraus, chosen per sample.
  RandomAny,
  RpbesBasis,
};

/// Shared: one operator set per round, whatever happened before.
/// PerBranch: a fresh draw for every history of earlier outcomes.
enum class Conditioning { Shared, PerBranch };

struct LoccRound {
  Party party = Party::Supplier;
  MeasurementSource source = MeasurementSource::RandomProjective;
  Conditioning conditioning = Conditioning::PerBranch;
  std::optional<Measurement> fixed;      // Fixed
  std::size_t min_outcomes = 2;          // RandomKraus / RandomAny
  std::size_t max_outcomes = 8;
  std::optional<PhaseMatrix> theta;      // RpbesBasis; random if empty
};

struct LoccRoundPlan {
  std::string name;
  std::vector<LoccRound> rounds;

  /// Throws unless the plan is nonempty, starts with the supplier, and every
  /// fixed measurement fits its party.
  void validate() const;
};

LoccRound supplier_round(MeasurementSource source);
LoccRound node_round(Party party, MeasurementSource source);

/// Named plans: "bell", "projective", "kraus", "rpbes", "rpbes-saturating",
/// "multi-round", "local-unitary".
LoccRoundPlan plan_by_name(const std::string& name);
std::vector<std::string> plan_names();

/// The strategy families cycled by the default Monte Carlo run:
/// projective, kraus, rpbes, multi-round (trial t uses family t mod 4).
std::vector<LoccRoundPlan> default_plan_families();

struct BoundSample {
  std::string strategy;
  double achieved = 0.0;
};

struct BoundReport {
  std::vector<double> link_concurrences;
  double bound = 0.0;
  std::vector<BoundSample> samples;
  double max_achieved = 0.0;
  std::size_t violations = 0;
  double violation_tolerance = 1e-9;

  double c12() const { return link_concurrences.at(0); }
  double c34() const { return link_concurrences.at(1); }
};

/// C(rho12) * C(rho34).
double theorem1_bound(const DensityMatrix& rho12, const DensityMatrix& rho34);

/// Expands every conditioned branch of one sampled strategy. Labels list the
/// outcome of each executed step; states are the normalized Alice-Bob states.
OutcomeDistribution multi_round_locc(const DensityMatrix& rho12, const DensityMatrix& rho34,
                                     const LoccRoundPlan& plan, std::uint64_t seed);

/// sum_j Q_j C(sigma_j) for one sampled strategy.
double strategy_concurrence(const DensityMatrix& rho12, const DensityMatrix& rho34, const LoccRoundPlan& plan,
                            std::uint64_t seed);

/// Trial t draws a strategy from plans[t % plans.size()] seeded by
/// Rng(seed).split(t).
BoundReport monte_carlo_red(const DensityMatrix& rho12, const DensityMatrix& rho34,
                            const std::vector<LoccRoundPlan>& plans, std::size_t trials, std::uint64_t seed);
BoundReport monte_carlo_red(const DensityMatrix& rho12, const DensityMatrix& rho34, const LoccRoundPlan& plan,
                            std::size_t trials, std::uint64_t seed);

enum class ChainStrategy { SequentialRpbes, Random };

std::optional<ChainStrategy> chain_strategy_from_name(const std::string& name);
std::string to_string(ChainStrategy s);

/// Sequential RPBES: node 1, then node 2, ... each measure in the rpbes basis
/// with theta = pi m m', the endpoint and the next node apply the correction
/// unitaries, and a local rotation brings a pure link back to Schmidt form.
/// Random: every trial compiles default_plan_families()[t % 4] onto the chain
/// (a supplier round means every intermediate node in order), so a two-link
/// chain reproduces monte_carlo_red with the default families exactly.
BoundReport chain_corollary_sim(const std::vector<DensityMatrix>& chain, ChainStrategy strategy, std::size_t trials,
                                std::uint64_t seed);

}  // namespace redsim
