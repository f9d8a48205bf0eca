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

#include "redsim/bounds.hpp"

#include "redsim/protocol.hpp"

namespace redsim {

namespace {

// Branch sampler. `branch` is only provided for steps that declare they need
// the (unnormalized) branch state.
using Sampler = std::function<Measurement(const State* branch, std::span<const std::size_t> labels, Rng& rng)>;

struct Step {
  Subsystems targets;
  Sampler sample;
  Conditioning conditioning = Conditioning::PerBranch;
  bool needs_state = false;
};

struct Strategy {
  std::vector<Step> steps;
  Subsystems endpoints;
};

std::uint64_t history_hash(std::size_t step, std::span<const std::size_t> labels) {
  std::uint64_t h = splitmix64(static_cast<std::uint64_t>(step) + 1);
  for (auto l : labels) h = splitmix64(h ^ (static_cast<std::uint64_t>(l) + 0x51ed27ULL));
  return h;
}

double branch_weight(const PureState& s) { return s.amplitudes().squaredNorm(); }
double branch_weight(const DensityMatrix& s) { return s.trace(); }

template <typename S, typename Leaf>
void expand(const Strategy& strategy, std::size_t k, const S& branch, std::vector<std::size_t>& labels,
            const Rng& trial, Leaf&& leaf) {
  if (k == strategy.steps.size()) {
    leaf(branch, labels);
    return;
  }
  const Step& step = strategy.steps[k];
  Rng rng = trial.split(step.conditioning == Conditioning::Shared ? history_hash(k, {}) : history_hash(k, labels));
  Measurement m = [&] {
    if (step.needs_state) {
      const State s = branch;
      return step.sample(&s, labels, rng);
    }
    return step.sample(nullptr, labels, rng);
  }();
  if (!m.is_complete())
    throw std::logic_error("sampled measurement violates completeness (error " +
                           std::to_string(m.completeness_error()) + ")");
  for (std::size_t j = 0; j < m.num_outcomes(); ++j) {
    S child = apply_local_operator(branch, m[j], step.targets);
    if (branch_weight(child) < kZeroProbability) continue;
    labels.push_back(j);
    expand(strategy, k + 1, child, labels, trial, leaf);
    labels.pop_back();
  }
}

std::optional<PureState> as_pure(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> es((rho.matrix() + rho.matrix().adjoint()) / 2.0);
  const auto n = rho.matrix().rows();
  if (es.eigenvalues()(n - 1) < 1.0 - kZeroProbability) return std::nullopt;
  VectorXc v = es.eigenvectors().col(n - 1);
  // Deterministic global phase: largest-magnitude entry real positive.
  Eigen::Index at = 0;
  v.cwiseAbs().maxCoeff(&at);
  v *= std::conj(v(at)) / std::abs(v(at));
  return PureState(v / v.norm(), rho.dims());
}

void require_two_qubit(const DensityMatrix& rho, const char* what) {
  if (rho.dims() != Dims{2, 2})
    throw std::invalid_argument(std::string(what) + " must be a two-qubit state, got dims " + to_string(rho.dims()));
  rho.require_valid();
}

// Runs fn with the initial state in the cheapest exact representation: a
// state vector when every link is pure, else the full density matrix.
template <typename Fn>
auto with_initial_state(const std::vector<DensityMatrix>& links, Fn&& fn) {
  std::vector<PureState> pure;
  for (const auto& l : links) {
    auto p = as_pure(l);
    if (!p) break;
    pure.push_back(std::move(*p));
  }
  if (pure.size() == links.size()) {
    PureState s = pure.front();
    for (std::size_t k = 1; k < pure.size(); ++k) s = tensor_product(s, pure[k]);
    return fn(s);
  }
  DensityMatrix s = links.front();
  for (std::size_t k = 1; k < links.size(); ++k) s = tensor_product(s, links[k]);
  return fn(s);
}

template <typename S>
DensityMatrix endpoint_state(const S& branch, const Subsystems& endpoints) {
  return partial_trace(branch, endpoints);
}

double achieved_concurrence(const Strategy& strategy, const std::vector<DensityMatrix>& links, const Rng& trial) {
  return with_initial_state(links, [&](const auto& initial) {
    double total = 0.0;
    std::vector<std::size_t> labels;
    expand(strategy, 0, initial, labels, trial, [&](const auto& leaf, const std::vector<std::size_t>&) {
      total += weighted_concurrence_two_qubit(endpoint_state(leaf, strategy.endpoints).matrix());
    });
    return total;
  });
}

MatrixXc bell_projector(int which) {
  const double s = std::sqrt(0.5);
  VectorXc v = VectorXc::Zero(4);
  switch (which) {
    case 0: v << s, 0, 0, s; break;
    case 1: v << s, 0, 0, -s; break;
    case 2: v << 0, s, s, 0; break;
    default: v << 0, s, -s, 0; break;
  }
  return v * v.adjoint();
}

Measurement bell_measurement() { return Measurement({bell_projector(0), bell_projector(1), bell_projector(2), bell_projector(3)}); }

PhaseMatrix random_theta(Rng& rng) {
  Eigen::MatrixXd t(2, 2);
  for (Eigen::Index i = 0; i < 4; ++i) t(i) = rng.uniform(0.0, 2.0 * kPi);
  return PhaseMatrix(std::move(t));
}

std::size_t draw_outcomes(const LoccRound& round, Rng& rng) {
  return round.min_outcomes + rng.index(round.max_outcomes - round.min_outcomes + 1);
}

Sampler round_sampler(const LoccRound& round, std::size_t dim) {
  return [round, dim](const State*, std::span<const std::size_t>, Rng& rng) -> Measurement {
    switch (round.source) {
      case MeasurementSource::Fixed: return *round.fixed;
      case MeasurementSource::RandomProjective: return random_projective_measurement(dim, rng);
      case MeasurementSource::RandomKraus: return random_kraus_channel(dim, draw_outcomes(round, rng), rng);
      case MeasurementSource::RandomUnitary: return random_kraus_channel(dim, 1, rng);
      case MeasurementSource::RandomAny:
        if (rng.uniform() < 0.5) return random_projective_measurement(dim, rng);
        return random_kraus_channel(dim, draw_outcomes(round, rng), rng);
      case MeasurementSource::RpbesBasis: {
        if (round.theta) return rpbes_basis(2, *round.theta);
        return rpbes_basis(2, random_theta(rng));
      }
    }
    throw std::logic_error("unknown measurement source");
  };
}

// Lays a plan onto a chain of n_links two-qubit links.
Strategy compile(const LoccRoundPlan& plan, std::size_t n_links) {
  plan.validate();
  Strategy s;
  const std::size_t last = 2 * n_links - 1;
  s.endpoints = {0, last};
  for (const auto& round : plan.rounds) {
    switch (round.party) {
      case Party::Supplier:
        for (std::size_t node = 1; node < n_links; ++node)
          s.steps.push_back({{2 * node - 1, 2 * node}, round_sampler(round, 4), round.conditioning, false});
        break;
      case Party::Alice: s.steps.push_back({{0}, round_sampler(round, 2), round.conditioning, false}); break;
      case Party::Bob: s.steps.push_back({{last}, round_sampler(round, 2), round.conditioning, false}); break;
    }
  }
  return s;
}

// Local rotation taking a pure two-qubit link on `targets` to
// sqrt(l0)|00> + sqrt(l1)|11>; identity when the link is mixed.
Step schmidt_rotation(Subsystems targets) {
  Step step;
  step.targets = targets;
  step.needs_state = true;
  step.sample = [targets](const State* branch, std::span<const std::size_t>, Rng&) -> Measurement {
    const DensityMatrix reduced = std::visit([&](const auto& s) { return partial_trace(s, targets); }, *branch);
    const auto link = as_pure(reduced.normalized());
    if (!link) return Measurement({MatrixXc::Identity(4, 4)});
    const auto form = schmidt_decomposition(*link, {0});
    return Measurement({kron<double>(form.basis_a.adjoint(), form.basis_b.adjoint())});
  };
  return step;
}

Strategy sequential_rpbes(std::size_t n_links) {
  Strategy s;
  const std::size_t last = 2 * n_links - 1;
  s.endpoints = {0, last};
  const PhaseMatrix theta = PhaseMatrix::bilinear(2, kPi);
  const Measurement basis = rpbes_basis(2, theta);
  for (std::size_t node = 1; node < n_links; ++node) {
    const std::size_t left = 2 * node - 1;
    const std::size_t right = 2 * node;
    s.steps.push_back(schmidt_rotation({0, left}));
    s.steps.push_back(schmidt_rotation({right, right + 1}));
    s.steps.push_back({{left, right}, [basis](const State*, std::span<const std::size_t>, Rng&) { return basis; },
                       Conditioning::Shared, false});
    s.steps.push_back({{0, right + 1},
                       [](const State*, std::span<const std::size_t> labels, Rng&) {
                         const std::size_t o = labels.back();
                         const auto u = correction_unitaries(2, o / 2, o % 2);
                         return Measurement({kron<double>(u.alice, u.bob)});
                       },
                       Conditioning::PerBranch, false});
  }
  return s;
}

BoundReport make_report(const std::vector<DensityMatrix>& links) {
  BoundReport report;
  report.bound = 1.0;
  for (const auto& l : links) {
    report.link_concurrences.push_back(concurrence_two_qubit(l));
    report.bound *= report.link_concurrences.back();
  }
  return report;
}

void record(BoundReport& report, std::string strategy, double achieved) {
  report.max_achieved = report.samples.empty() ? achieved : std::max(report.max_achieved, achieved);
  if (achieved > report.bound + report.violation_tolerance) ++report.violations;
  report.samples.push_back({std::move(strategy), achieved});
}

}  // namespace

void LoccRoundPlan::validate() const {
  if (rounds.empty()) throw std::invalid_argument("LOCC plan '" + name + "' has no rounds");
  if (rounds.front().party != Party::Supplier)
    throw std::invalid_argument("LOCC plan '" + name + "' must start with a supplier measurement");
  for (const auto& r : rounds) {
    const std::size_t dim = r.party == Party::Supplier ? 4 : 2;
    if (r.source == MeasurementSource::Fixed) {
      if (!r.fixed) throw std::invalid_argument("fixed round without a measurement in plan '" + name + "'");
      if (r.fixed->dimension() != dim) throw std::invalid_argument("fixed measurement has the wrong dimension");
      if (!r.fixed->is_complete()) throw std::invalid_argument("fixed measurement violates completeness");
    }
    if (r.source == MeasurementSource::RpbesBasis && r.party != Party::Supplier)
      throw std::invalid_argument("the rpbes basis is a supplier measurement");
    if ((r.source == MeasurementSource::RandomKraus || r.source == MeasurementSource::RandomAny) &&
        (r.min_outcomes < 1 || r.max_outcomes < r.min_outcomes))
      throw std::invalid_argument("invalid outcome range in plan '" + name + "'");
  }
}

LoccRound supplier_round(MeasurementSource source) {
  LoccRound r;
  r.party = Party::Supplier;
  r.source = source;
  return r;
}

LoccRound node_round(Party party, MeasurementSource source) {
  LoccRound r;
  r.party = party;
  r.source = source;
  r.min_outcomes = 2;
  r.max_outcomes = 3;
  return r;
}

std::vector<std::string> plan_names() {
  return {"bell", "projective", "kraus", "rpbes", "rpbes-saturating", "multi-round", "local-unitary"};
}

LoccRoundPlan plan_by_name(const std::string& name) {
  LoccRoundPlan plan{name, {}};
  if (name == "bell") {
    LoccRound r = supplier_round(MeasurementSource::Fixed);
    r.fixed = bell_measurement();
    plan.rounds.push_back(std::move(r));
  } else if (name == "projective") {
    plan.rounds.push_back(supplier_round(MeasurementSource::RandomProjective));
  } else if (name == "kraus") {
    plan.rounds.push_back(supplier_round(MeasurementSource::RandomKraus));
  } else if (name == "rpbes") {
    plan.rounds.push_back(supplier_round(MeasurementSource::RpbesBasis));
  } else if (name == "rpbes-saturating") {
    LoccRound r = supplier_round(MeasurementSource::RpbesBasis);
    r.theta = PhaseMatrix::bilinear(2, kPi);
    plan.rounds.push_back(std::move(r));
  } else if (name == "multi-round") {
    // Sapna (M_j) -> Alice (A_j^k) -> Bob (B_jk^n) -> Sapna (F_jkn^i)
    plan.rounds.push_back(supplier_round(MeasurementSource::RandomProjective));
    plan.rounds.push_back(node_round(Party::Alice, MeasurementSource::RandomKraus));
    plan.rounds.push_back(node_round(Party::Bob, MeasurementSource::RandomKraus));
    LoccRound f = supplier_round(MeasurementSource::RandomKraus);
    f.min_outcomes = 2;
    f.max_outcomes = 3;
    plan.rounds.push_back(std::move(f));
  } else if (name == "local-unitary") {
    plan.rounds.push_back(supplier_round(MeasurementSource::RandomProjective));
    plan.rounds.push_back(node_round(Party::Alice, MeasurementSource::RandomUnitary));
    plan.rounds.push_back(node_round(Party::Bob, MeasurementSource::RandomUnitary));
  } else {
    throw std::invalid_argument("unknown LOCC plan '" + name + "'");
  }
  return plan;
}

std::vector<LoccRoundPlan> default_plan_families() {
  return {plan_by_name("projective"), plan_by_name("kraus"), plan_by_name("rpbes"), plan_by_name("multi-round")};
}

double theorem1_bound(const DensityMatrix& rho12, const DensityMatrix& rho34) {
  require_two_qubit(rho12, "rho12");
  require_two_qubit(rho34, "rho34");
  return concurrence_two_qubit(rho12) * concurrence_two_qubit(rho34);
}

OutcomeDistribution multi_round_locc(const DensityMatrix& rho12, const DensityMatrix& rho34,
                                     const LoccRoundPlan& plan, std::uint64_t seed) {
  require_two_qubit(rho12, "rho12");
  require_two_qubit(rho34, "rho34");
  const Strategy strategy = compile(plan, 2);
  const Rng trial(seed);
  return with_initial_state({rho12, rho34}, [&](const auto& initial) {
    OutcomeDistribution dist;
    std::vector<std::size_t> labels;
    expand(strategy, 0, initial, labels, trial, [&](const auto& leaf, const std::vector<std::size_t>& path) {
      const DensityMatrix reduced = endpoint_state(leaf, strategy.endpoints);
      const double q = reduced.trace();
      dist.outcomes.push_back({path, q, DensityMatrix(reduced.matrix() / q, reduced.dims())});
    });
    return dist;
  });
}

double strategy_concurrence(const DensityMatrix& rho12, const DensityMatrix& rho34, const LoccRoundPlan& plan,
                            std::uint64_t seed) {
  require_two_qubit(rho12, "rho12");
  require_two_qubit(rho34, "rho34");
  return achieved_concurrence(compile(plan, 2), {rho12, rho34}, Rng(seed));
}

BoundReport monte_carlo_red(const DensityMatrix& rho12, const DensityMatrix& rho34,
                            const std::vector<LoccRoundPlan>& plans, std::size_t trials, std::uint64_t seed) {
  require_two_qubit(rho12, "rho12");
  require_two_qubit(rho34, "rho34");
  if (plans.empty()) throw std::invalid_argument("monte_carlo_red needs at least one plan");
  if (trials < 1) throw std::invalid_argument("monte_carlo_red needs trials >= 1");
  std::vector<Strategy> compiled;
  for (const auto& p : plans) compiled.push_back(compile(p, 2));
  const std::vector<DensityMatrix> links{rho12, rho34};
  BoundReport report = make_report(links);
  const Rng master(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t f = t % plans.size();
    record(report, plans[f].name + "#" + std::to_string(t), achieved_concurrence(compiled[f], links, master.split(t)));
  }
  return report;
}

BoundReport monte_carlo_red(const DensityMatrix& rho12, const DensityMatrix& rho34, const LoccRoundPlan& plan,
                            std::size_t trials, std::uint64_t seed) {
  return monte_carlo_red(rho12, rho34, std::vector<LoccRoundPlan>{plan}, trials, seed);
}

std::optional<ChainStrategy> chain_strategy_from_name(const std::string& name) {
  if (name == "sequential-rpbes") return ChainStrategy::SequentialRpbes;
  if (name == "random") return ChainStrategy::Random;
  return std::nullopt;
}

std::string to_string(ChainStrategy s) { return s == ChainStrategy::SequentialRpbes ? "sequential-rpbes" : "random"; }

BoundReport chain_corollary_sim(const std::vector<DensityMatrix>& chain, ChainStrategy strategy, std::size_t trials,
                                std::uint64_t seed) {
  if (chain.size() < 2) throw std::invalid_argument("a chain needs at least two links");
  for (const auto& link : chain) require_two_qubit(link, "chain link");
  if (trials < 1) throw std::invalid_argument("chain_corollary_sim needs trials >= 1");
  BoundReport report = make_report(chain);
  const Rng master(seed);
  if (strategy == ChainStrategy::SequentialRpbes) {
    record(report, "sequential-rpbes", achieved_concurrence(sequential_rpbes(chain.size()), chain, master));
    return report;
  }
  const auto plans = default_plan_families();
  std::vector<Strategy> compiled;
  for (const auto& p : plans) compiled.push_back(compile(p, chain.size()));
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t f = t % plans.size();
    record(report, plans[f].name + "#" + std::to_string(t), achieved_concurrence(compiled[f], chain, master.split(t)));
  }
  return report;
}

}  // namespace redsim
