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

#include "redsim/phase_optimizer.hpp"

#include <optional>

#include "redsim/protocol.hpp"
#include "redsim/random.hpp"

namespace redsim {

namespace {

void check_inputs(const RVector<double>& lambda, const RVector<double>& eta) {
  validate_weights(lambda, "lambda");
  validate_weights(eta, "eta");
  if (lambda.size() != eta.size()) throw std::invalid_argument("lambda and eta have different dimensions");
}

double squared_objective(const RVector<double>& lambda, const RVector<double>& eta, const Eigen::MatrixXd& t) {
  const auto d = lambda.size();
  double acc = 0.0;
  for (Eigen::Index k = 1; k < d; ++k)
    for (Eigen::Index kp = 0; kp < k; ++kp)
      for (Eigen::Index m = 1; m < d; ++m)
        for (Eigen::Index mp = 0; mp < m; ++mp) {
          const double w = lambda(k) * lambda(kp) * eta(m) * eta(mp);
          if (w == 0.0) continue;
          // |e^{iA} - e^{iB}|^2 = 2 - 2 cos(A - B)
          const double diff = t(k, m) + t(kp, mp) - t(k, mp) - t(kp, m);
          acc += w * (2.0 - 2.0 * std::cos(diff));
        }
  return 4.0 * acc;
}

constexpr double kGolden = 0.61803398874989484820;

// Maximizes f over [lo, hi] for unimodal f.
template <typename F>
double golden_section_max(F&& f, double lo, double hi, double width) {
  double a = hi - kGolden * (hi - lo);
  double b = lo + kGolden * (hi - lo);
  double fa = f(a);
  double fb = f(b);
  while (hi - lo > width) {
    if (fa < fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + kGolden * (hi - lo);
      fb = f(b);
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = hi - kGolden * (hi - lo);
      fa = f(a);
    }
  }
  return fa > fb ? a : b;
}

struct LocalResult {
  Eigen::MatrixXd theta;
  double value;
  std::size_t sweeps;
  bool converged;
};

LocalResult coordinate_ascent(const RVector<double>& lambda, const RVector<double>& eta, Eigen::MatrixXd theta,
                              const OptimizerOptions& options) {
  const auto d = lambda.size();
  constexpr int kGrid = 12;
  const double step = 2.0 * kPi / kGrid;
  double current = std::sqrt(squared_objective(lambda, eta, theta));
  std::size_t sweep = 0;
  bool converged = false;
  while (sweep < options.max_iters) {
    ++sweep;
    const double before = current;
    for (Eigen::Index k = 1; k < d; ++k)
      for (Eigen::Index m = 1; m < d; ++m) {
        auto along = [&](double x) {
          const double saved = theta(k, m);
          theta(k, m) = x;
          const double v = squared_objective(lambda, eta, theta);
          theta(k, m) = saved;
          return v;
        };
        // Along one coordinate the objective is a sinusoid, so the best
        // grid point brackets the maximum within one grid step.
        double best_x = theta(k, m);
        double best_v = along(best_x);
        for (int g = 0; g < kGrid; ++g) {
          const double x = theta(k, m) + g * step;
          const double v = along(x);
          if (v > best_v) {
            best_v = v;
            best_x = x;
          }
        }
        const double x = golden_section_max(along, best_x - step, best_x + step, 1e-9);
        if (along(x) >= best_v) best_x = x;
        theta(k, m) = std::remainder(best_x, 2.0 * kPi);
      }
    current = std::sqrt(squared_objective(lambda, eta, theta));
    if (current - before < options.tol) {
      converged = true;
      break;
    }
  }
  return {std::move(theta), current, sweep, converged};
}

}  // namespace

double concurrence_F(const RVector<double>& lambda, const RVector<double>& eta, const PhaseMatrix& theta) {
  check_inputs(lambda, eta);
  if (theta.dimension() != static_cast<std::size_t>(lambda.size()))
    throw std::invalid_argument("phase matrix dimension does not match the weights");
  return std::sqrt(std::max(0.0, squared_objective(lambda, eta, theta.matrix())));
}

OptimizationResult optimize_phases(const RVector<double>& lambda, const RVector<double>& eta,
                                   const OptimizerOptions& options) {
  check_inputs(lambda, eta);
  if (options.restarts < 1) throw std::invalid_argument("optimize_phases needs restarts >= 1");
  const auto d = static_cast<std::size_t>(lambda.size());
  const PhaseMatrix baseline = PhaseMatrix::bilinear(d, 2.0 * kPi / static_cast<double>(d));

  OptimizationResult result;
  result.baseline_c = concurrence_F(lambda, eta, baseline);
  const Rng master(options.seed);
  std::optional<LocalResult> best;
  for (std::size_t r = 0; r < options.restarts; ++r) {
    Eigen::MatrixXd start = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    if (r == 0 && options.start_from_baseline) {
      start = baseline.matrix();
    } else {
      Rng rng = master.split(r);
      for (Eigen::Index k = 1; k < start.rows(); ++k)
        for (Eigen::Index m = 1; m < start.cols(); ++m) start(k, m) = rng.uniform(-kPi, kPi);
    }
    LocalResult local = coordinate_ascent(lambda, eta, std::move(start), options);
    result.restart_values.push_back(local.value);
    if (!best || local.value > best->value) {
      result.best_restart = r;
      best = std::move(local);
    }
  }
  if (best->value < result.baseline_c) {
    best->theta = baseline.matrix();
    best->value = result.baseline_c;
  }
  result.theta_star = PhaseMatrix(best->theta);
  result.c_star = concurrence_F(lambda, eta, result.theta_star);
  result.iterations = best->sweeps;
  result.converged = best->converged;
  return result;
}

}  // namespace redsim
