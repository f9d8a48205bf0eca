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

#include "doctest.h"
#include "redsim/bounds.hpp"
#include "redsim/protocol.hpp"
#include "test_support.hpp"

using namespace redsim;
using redsim::testing::bell_mixture;
using redsim::testing::bell_state;
using redsim::testing::weights2;

namespace {

DensityMatrix schmidt_density(double lambda0) { return schmidt_state(weights2(lambda0)).density(); }

DensityMatrix product_density() { return PureState::basis({2, 2}, 1).density(); }

LoccRoundPlan with_identity_tail(LoccRoundPlan plan) {
  for (Party p : {Party::Alice, Party::Bob, Party::Supplier}) {
    LoccRound r = p == Party::Supplier ? supplier_round(MeasurementSource::Fixed) : node_round(p, MeasurementSource::Fixed);
    const Eigen::Index dim = p == Party::Supplier ? 4 : 2;
    r.fixed = Measurement({MatrixXc::Identity(dim, dim)});
    plan.rounds.push_back(std::move(r));
  }
  return plan;
}

}  // namespace

TEST_CASE("product bound values") {
  CHECK(theorem1_bound(bell_state().density(), bell_state().density()) == doctest::Approx(1.0));
  CHECK(theorem1_bound(bell_state().density(), product_density()) == 0.0);
  CHECK(theorem1_bound(schmidt_density(0.8), bell_mixture(0.75)) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK_THROWS_AS(theorem1_bound(DensityMatrix::maximally_mixed({2, 3}), product_density()), std::invalid_argument);
}

TEST_CASE("Bell-basis supplier measurement swaps entanglement") {
  const auto rho = bell_state().density();
  const auto report = monte_carlo_red(rho, rho, plan_by_name("bell"), 3, 1);
  CHECK(report.bound == doctest::Approx(1.0));
  for (const auto& s : report.samples) CHECK(s.achieved == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.violations == 0);
  // Same strategy with a mixed representation of the inputs.
  const DensityMatrix noisy_rho(rho.matrix() * (1.0 - 1e-3) + MatrixXc::Identity(4, 4) * 0.25e-3, {2, 2});
  CHECK(strategy_concurrence(noisy_rho, rho, plan_by_name("bell"), 0) <= theorem1_bound(noisy_rho, rho) + 1e-9);
}

TEST_CASE("separable links distribute nothing") {
  const auto plans = default_plan_families();
  const auto report = monte_carlo_red(bell_state().density(), product_density(), plans, 40, 2);
  for (const auto& s : report.samples) CHECK(s.achieved < 1e-12);
  CHECK(report.violations == 0);
}

TEST_CASE("saturating rpbes plan on the mixed example") {
  const auto rho12 = schmidt_density(0.8);
  const auto rho34 = bell_mixture(0.75);
  CHECK(strategy_concurrence(rho12, rho34, plan_by_name("rpbes-saturating"), 0) ==
        doctest::Approx(0.4).epsilon(1e-9));
  CHECK(strategy_concurrence(schmidt_density(0.8), schmidt_density(0.6), plan_by_name("rpbes-saturating"), 0) ==
        doctest::Approx(0.7838367176906171).epsilon(1e-9));
}

TEST_CASE("single-measurement strategies respect the bound on the mixed example") {
  const auto rho12 = schmidt_density(0.8);
  const auto rho34 = bell_mixture(0.75);
  const std::vector<LoccRoundPlan> singles{plan_by_name("projective"), plan_by_name("kraus"), plan_by_name("rpbes")};
  const auto report = monte_carlo_red(rho12, rho34, singles, 10000, 3);
  CHECK(report.samples.size() == 10000);
  CHECK(report.bound == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(report.max_achieved <= 0.4 + 1e-9);
  CHECK(report.max_achieved > 0.0);
  CHECK(report.violations == 0);
}

TEST_CASE("random plans respect the bound on every input class") {
  Rng rng(4);
  const auto plans = default_plan_families();
  for (int pair = 0; pair < 12; ++pair) {
    const auto a = pair % 3 == 2 ? random_density_matrix({2, 2}, 2, rng) : random_pure_state({2, 2}, rng).density();
    const auto b = pair % 3 == 0 ? random_pure_state({2, 2}, rng).density() : random_density_matrix({2, 2}, 1 + rng.index(4), rng);
    const auto report = monte_carlo_red(a, b, plans, 60, 100 + static_cast<std::uint64_t>(pair));
    CHECK(report.violations == 0);
    CHECK(report.max_achieved <= report.bound + 1e-9);
  }
}

TEST_CASE("multi-round distributions are normalized") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_density_matrix({2, 2}, 2, rng);
    const auto b = random_pure_state({2, 2}, rng).density();
    const auto dist = multi_round_locc(a, b, plan_by_name("multi-round"), 7 + static_cast<std::uint64_t>(trial));
    CHECK(std::abs(dist.total_probability() - 1.0) < 1e-8);
    for (const auto& o : dist.outcomes) {
      CHECK(o.labels.size() == 4);
      CHECK(std::get<DensityMatrix>(o.state).is_valid(1e-9));
    }
    double c14 = 0.0;
    for (const auto& o : dist.outcomes) c14 += o.probability * concurrence(o.state);
    CHECK(std::abs(c14 - strategy_concurrence(a, b, plan_by_name("multi-round"), 7 + static_cast<std::uint64_t>(trial))) <
          1e-9);
  }
}

TEST_CASE("identity rounds after the first change nothing") {
  Rng rng(6);
  for (const std::string name : {"projective", "kraus", "rpbes"}) {
    const auto a = random_density_matrix({2, 2}, 3, rng);
    const auto b = schmidt_density(0.7);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const double one = strategy_concurrence(a, b, plan_by_name(name), seed);
      const double padded = strategy_concurrence(a, b, with_identity_tail(plan_by_name(name)), seed);
      CHECK(std::abs(one - padded) < 1e-12);
    }
  }
}

TEST_CASE("local unitary rounds leave the average concurrence unchanged") {
  Rng rng(7);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = random_density_matrix({2, 2}, 1 + rng.index(4), rng);
    const auto b = random_density_matrix({2, 2}, 1 + rng.index(4), rng);
    const double single = strategy_concurrence(a, b, plan_by_name("projective"), seed);
    const double rotated = strategy_concurrence(a, b, plan_by_name("local-unitary"), seed);
    CHECK(std::abs(single - rotated) < 1e-9);
  }
}

TEST_CASE("multi-round plans on Bell inputs never exceed one") {
  const auto rho = bell_state().density();
  const auto report = monte_carlo_red(rho, rho, plan_by_name("multi-round"), 1000, 8);
  CHECK(report.max_achieved <= 1.0 + 1e-9);
  CHECK(report.violations == 0);
}

TEST_CASE("reports are deterministic in the seed") {
  const auto a = schmidt_density(0.8);
  const auto b = bell_mixture(0.75);
  const auto r1 = monte_carlo_red(a, b, default_plan_families(), 25, 42);
  const auto r2 = monte_carlo_red(a, b, default_plan_families(), 25, 42);
  const auto r3 = monte_carlo_red(a, b, default_plan_families(), 25, 43);
  REQUIRE(r1.samples.size() == r2.samples.size());
  bool any_diff = false;
  for (std::size_t k = 0; k < r1.samples.size(); ++k) {
    CHECK(r1.samples[k].strategy == r2.samples[k].strategy);
    CHECK(r1.samples[k].achieved == r2.samples[k].achieved);
    any_diff = any_diff || r1.samples[k].achieved != r3.samples[k].achieved;
  }
  CHECK(any_diff);
  CHECK(r1.samples[5].strategy == "kraus#5");
}

TEST_CASE("invalid plans are rejected") {
  const auto a = bell_state().density();
  LoccRoundPlan empty{"empty", {}};
  CHECK_THROWS_AS(monte_carlo_red(a, a, empty, 1, 0), std::invalid_argument);
  LoccRoundPlan node_first{"node-first", {node_round(Party::Alice, MeasurementSource::RandomKraus)}};
  CHECK_THROWS_AS(multi_round_locc(a, a, node_first, 0), std::invalid_argument);
  LoccRoundPlan fixed_missing{"fixed", {supplier_round(MeasurementSource::Fixed)}};
  CHECK_THROWS_AS(fixed_missing.validate(), std::invalid_argument);
  LoccRoundPlan wrong_dim{"wrong", {supplier_round(MeasurementSource::Fixed)}};
  wrong_dim.rounds[0].fixed = computational_basis_measurement(2);
  CHECK_THROWS_AS(wrong_dim.validate(), std::invalid_argument);
  LoccRoundPlan node_rpbes = plan_by_name("projective");
  node_rpbes.rounds.push_back(node_round(Party::Bob, MeasurementSource::RpbesBasis));
  CHECK_THROWS_AS(node_rpbes.validate(), std::invalid_argument);
  CHECK_THROWS_AS(plan_by_name("nope"), std::invalid_argument);
  CHECK_THROWS_AS(monte_carlo_red(a, a, plan_by_name("projective"), 0, 0), std::invalid_argument);
  for (const auto& name : plan_names()) CHECK_NOTHROW(plan_by_name(name).validate());
}

TEST_CASE("chain: sequential rpbes saturates the product") {
  const std::vector<DensityMatrix> chain{schmidt_density(0.8), schmidt_density(0.7), schmidt_density(0.6)};
  const auto report = chain_corollary_sim(chain, ChainStrategy::SequentialRpbes, 1, 0);
  const double product = 0.8 * 0.916515138991168 * 0.9797958971132712;
  CHECK(report.link_concurrences.size() == 3);
  CHECK(report.bound == doctest::Approx(product).epsilon(1e-12));
  REQUIRE(report.samples.size() == 1);
  CHECK(report.samples[0].strategy == "sequential-rpbes");
  CHECK(std::abs(report.samples[0].achieved - product) < 1e-8);
  CHECK(report.violations == 0);
}

TEST_CASE("chain: sequential rpbes on random pure chains") {
  Rng rng(9);
  for (std::size_t n : {2u, 3u, 4u}) {
    std::vector<DensityMatrix> chain;
    for (std::size_t k = 0; k < n; ++k) chain.push_back(random_pure_state({2, 2}, rng).density());
    const auto report = chain_corollary_sim(chain, ChainStrategy::SequentialRpbes, 1, 0);
    CHECK(std::abs(report.max_achieved - report.bound) < 1e-8);
  }
}

TEST_CASE("chain: random strategies respect the product") {
  Rng rng(10);
  std::vector<DensityMatrix> chain{schmidt_density(0.8), random_density_matrix({2, 2}, 2, rng), schmidt_density(0.6)};
  const auto report = chain_corollary_sim(chain, ChainStrategy::Random, 40, 11);
  CHECK(report.samples.size() == 40);
  CHECK(report.violations == 0);
  CHECK(report.max_achieved <= report.bound + 1e-9);
}

TEST_CASE("chain of two links matches the pair simulation") {
  const auto a = schmidt_density(0.8);
  const auto b = bell_mixture(0.75);
  const auto chain = chain_corollary_sim({a, b}, ChainStrategy::Random, 30, 12);
  const auto pair = monte_carlo_red(a, b, default_plan_families(), 30, 12);
  REQUIRE(chain.samples.size() == pair.samples.size());
  for (std::size_t k = 0; k < pair.samples.size(); ++k)
    CHECK(chain.samples[k].achieved == doctest::Approx(pair.samples[k].achieved).epsilon(1e-12));
  CHECK(chain.bound == pair.bound);
}

TEST_CASE("chain argument checks") {
  CHECK_THROWS_AS(chain_corollary_sim({schmidt_density(0.8)}, ChainStrategy::Random, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(chain_corollary_sim({schmidt_density(0.8), DensityMatrix::maximally_mixed({4})},
                                      ChainStrategy::SequentialRpbes, 1, 0),
                  std::invalid_argument);
  CHECK(chain_strategy_from_name("random") == ChainStrategy::Random);
  CHECK(chain_strategy_from_name("sequential-rpbes") == ChainStrategy::SequentialRpbes);
  CHECK_FALSE(chain_strategy_from_name("other").has_value());
  CHECK(to_string(ChainStrategy::Random) == "random");
}
