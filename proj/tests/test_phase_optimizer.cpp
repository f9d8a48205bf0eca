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
#include "redsim/entanglement.hpp"
#include "redsim/phase_optimizer.hpp"
#include "redsim/protocol.hpp"
#include "test_support.hpp"

using namespace redsim;
using redsim::testing::weights2;

namespace {

Eigen::MatrixXd random_angles(std::size_t d, Rng& rng) {
  Eigen::MatrixXd t(d, d);
  for (Eigen::Index i = 0; i < t.size(); ++i) t(i) = rng.uniform(-kPi, 3.0 * kPi);
  return t;
}

RVector<double> weights3(double a, double b, double c) {
  RVector<double> w(3);
  w << a, b, c;
  return w;
}

}  // namespace

TEST_CASE("closed form at reference phases") {
  CHECK(concurrence_F(weights2(0.8), weights2(0.6), PhaseMatrix::bilinear(2, kPi)) ==
        doctest::Approx(0.7838367176906171).epsilon(1e-12));
  CHECK(concurrence_F(weights2(0.8), weights2(0.6), PhaseMatrix(Eigen::MatrixXd::Constant(2, 2, 1.3))) <
        1e-12);
  const auto u = weights3(1.0 / 3, 1.0 / 3, 1.0 / 3);
  CHECK(concurrence_F(u, u, PhaseMatrix::bilinear(3, 2.0 * kPi / 3.0)) ==
        doctest::Approx(1.1547005383792515).epsilon(1e-12));
  CHECK_THROWS_AS(concurrence_F(u, weights2(0.5), PhaseMatrix::zero(3)), std::invalid_argument);
  CHECK_THROWS_AS(concurrence_F(u, u, PhaseMatrix::zero(2)), std::invalid_argument);
}

TEST_CASE("closed form agrees with the simulated protocol") {
  Rng rng(31);
  for (std::size_t d : {2u, 3u, 4u})
    for (int trial = 0; trial < 50; ++trial) {
      const auto lambda = random_simplex(d, rng);
      const auto eta = random_simplex(d, rng);
      const PhaseMatrix theta(random_angles(d, rng));
      const auto run = run_rpbes_pure(lambda, eta, theta);
      const double simulated = concurrence(run.corrected_states.back());
      CHECK(std::abs(concurrence_F(lambda, eta, theta) - simulated) < 1e-9);
      CHECK(std::abs(concurrence_F(lambda, eta, theta) -
                     concurrence_pure(predicted_final_state(lambda, eta, theta))) < 1e-10);
    }
}

TEST_CASE("closed form is invariant under row and column offsets") {
  Rng rng(32);
  for (std::size_t d : {2u, 3u, 4u})
    for (int trial = 0; trial < 30; ++trial) {
      const auto lambda = random_simplex(d, rng);
      const auto eta = random_simplex(d, rng);
      const Eigen::MatrixXd t = random_angles(d, rng);
      Eigen::MatrixXd shifted = t;
      for (std::size_t m = 0; m < d; ++m) {
        const double alpha = rng.uniform(-5.0, 5.0);
        const double beta = rng.uniform(-5.0, 5.0);
        shifted.row(static_cast<Eigen::Index>(m)).array() += alpha;
        shifted.col(static_cast<Eigen::Index>(m)).array() += beta;
      }
      CHECK(std::abs(concurrence_F(lambda, eta, PhaseMatrix(t)) - concurrence_F(lambda, eta, PhaseMatrix(shifted))) <
            1e-10);
    }
}

TEST_CASE("optimizer reaches the product for d = 2") {
  Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const auto lambda = random_simplex(2, rng);
    const auto eta = random_simplex(2, rng);
    const double product = 4.0 * std::sqrt(lambda(0) * lambda(1) * eta(0) * eta(1));
    const auto r = optimize_phases(lambda, eta, {.restarts = 3, .seed = static_cast<std::uint64_t>(trial)});
    CHECK(std::abs(r.c_star - product) < 1e-6);
    CHECK(r.c_star <= product + 1e-12);
  }
}

TEST_CASE("optimizer on uniform d = 3 weights") {
  const auto u = weights3(1.0 / 3, 1.0 / 3, 1.0 / 3);
  OptimizerOptions options;
  options.start_from_baseline = false;
  const auto r = optimize_phases(u, u, options);
  CHECK(std::abs(r.c_star - std::sqrt(4.0 / 3.0)) < 1e-6);
  CHECK(r.baseline_c == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("optimizer result invariants") {
  Rng rng(34);
  for (std::size_t d : {2u, 3u, 4u})
    for (int trial = 0; trial < 5; ++trial) {
      const auto lambda = random_simplex(d, rng);
      const auto eta = random_simplex(d, rng);
      OptimizerOptions options;
      options.restarts = 4;
      options.seed = 100 + static_cast<std::uint64_t>(trial);
      const auto r = optimize_phases(lambda, eta, options);
      CHECK(r.c_star >= r.baseline_c - 1e-9);
      CHECK(std::abs(r.c_star - concurrence_pure(predicted_final_state(lambda, eta, r.theta_star))) < 1e-8);
      CHECK(r.restart_values.size() == 4);
      CHECK(r.theta_star.dimension() == d);
      for (double v : r.restart_values) CHECK(v <= r.c_star + 1e-15);
      CHECK(r.iterations <= options.max_iters);
    }
}

TEST_CASE("optimizer dominates its baseline on non-uniform d = 3 weights") {
  const auto w = weights3(0.5, 0.3, 0.2);
  const auto r = optimize_phases(w, w);
  CHECK(r.c_star >= concurrence_F(w, w, PhaseMatrix::bilinear(3, 2.0 * kPi / 3.0)) - 1e-12);
  CHECK(r.c_star < std::sqrt(4.0 / 3.0) - 1e-6);
  CHECK(r.converged);
}

TEST_CASE("optimizer is deterministic") {
  const auto w = weights3(0.6, 0.25, 0.15);
  const auto v = weights3(0.4, 0.4, 0.2);
  const auto a = optimize_phases(w, v, {.restarts = 5, .seed = 9});
  const auto b = optimize_phases(w, v, {.restarts = 5, .seed = 9});
  CHECK(a.c_star == b.c_star);
  CHECK(a.restart_values == b.restart_values);
  CHECK((a.theta_star.matrix().array() == b.theta_star.matrix().array()).all());
}

TEST_CASE("optimizer input checks") {
  RVector<double> bad(2);
  bad << 0.7, 0.2;
  CHECK_THROWS_AS(optimize_phases(bad, weights2(0.5)), std::invalid_argument);
  CHECK_THROWS_AS(optimize_phases(weights2(0.5), weights3(0.5, 0.3, 0.2)), std::invalid_argument);
  CHECK_THROWS_AS(optimize_phases(weights2(0.5), weights2(0.5), {.restarts = 0}), std::invalid_argument);
}
