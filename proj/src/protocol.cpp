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

#include "redsim/protocol.hpp"

namespace redsim {

void validate_weights(const RVector<double>& w, const char* what, double tol) {
  if (w.size() < 2) throw std::invalid_argument(std::string(what) + ": need at least two weights");
  if (!w.allFinite() || w.minCoeff() < 0.0) throw std::invalid_argument(std::string(what) + ": weights must be >= 0");
  if (std::abs(w.sum() - 1.0) > tol)
    throw std::invalid_argument(std::string(what) + ": weights sum to " + std::to_string(w.sum()) + ", expected 1");
}

MixedClassSpec MixedClassSpec::pure(const RVector<double>& schmidt_weights) {
  MixedClassSpec spec;
  spec.weights = RVector<double>::Ones(1);
  spec.amplitude_rows.push_back(schmidt_weights.cwiseMax(0.0).cwiseSqrt().cast<Complex>());
  return spec;
}

void MixedClassSpec::validate(double tol) const {
  if (amplitude_rows.empty()) throw std::invalid_argument("mixed-class spec has no terms");
  if (static_cast<std::size_t>(weights.size()) != amplitude_rows.size())
    throw std::invalid_argument("mixed-class spec: weight count does not match amplitude rows");
  const auto d = dimension();
  if (d < 2) throw std::invalid_argument("mixed-class spec: dimension must be >= 2");
  if (num_terms() > d) throw std::invalid_argument("mixed-class spec: more terms than the local dimension");
  if (!weights.allFinite() || weights.minCoeff() < 0.0 || std::abs(weights.sum() - 1.0) > tol)
    throw std::invalid_argument("mixed-class spec: weights must be nonnegative and sum to 1");
  for (const auto& row : amplitude_rows) {
    if (static_cast<std::size_t>(row.size()) != d)
      throw std::invalid_argument("mixed-class spec: amplitude rows have different lengths");
    if (std::abs(row.squaredNorm() - 1.0) > tol)
      throw std::invalid_argument("mixed-class spec: amplitude row is not normalized");
  }
}

DensityMatrix MixedClassSpec::density() const {
  validate();
  const auto d = static_cast<Eigen::Index>(dimension());
  MatrixXc rho = MatrixXc::Zero(d * d, d * d);
  for (std::size_t l = 0; l < num_terms(); ++l) {
    VectorXc psi = VectorXc::Zero(d * d);
    for (Eigen::Index k = 0; k < d; ++k) psi(k * d + k) = amplitude_rows[l](k);
    rho += weights(static_cast<Eigen::Index>(l)) * psi * psi.adjoint();
  }
  return DensityMatrix(std::move(rho), {dimension(), dimension()});
}

PureState schmidt_state(const RVector<double>& weights) {
  const auto d = weights.size();
  VectorXc psi = VectorXc::Zero(d * d);
  for (Eigen::Index k = 0; k < d; ++k) psi(k * d + k) = std::sqrt(std::max(weights(k), 0.0));
  const auto ud = static_cast<std::size_t>(d);
  return PureState(std::move(psi), {ud, ud});
}

CorrectionUnitaries correction_unitaries(std::size_t d, std::size_t j, std::size_t jp) {
  if (d < 2) throw std::invalid_argument("correction_unitaries needs d >= 2");
  if (j >= d || jp >= d) throw std::invalid_argument("correction_unitaries: outcome out of range");
  const auto n = static_cast<Eigen::Index>(d);
  const double dd = static_cast<double>(d);
  CorrectionUnitaries u{MatrixXc::Zero(n, n), MatrixXc::Zero(n, n)};
  for (Eigen::Index m = 0; m < n; ++m) {
    const double md = static_cast<double>(m);
    u.alice(m, m) = std::polar(1.0, 2.0 * kPi * static_cast<double>(jp) * md / dd);
    u.bob(m, m) = std::polar(1.0, 2.0 * kPi * static_cast<double>(d * j + jp) * md / (dd * dd));
  }
  return u;
}

ClassicalCost classical_cost(std::size_t d) {
  if (d < 2) throw std::invalid_argument("classical_cost needs d >= 2");
  const double b = std::log2(static_cast<double>(d));
  return {b, 2.0 * b};
}

namespace {

void check_theta(std::size_t d, const PhaseMatrix& theta) {
  if (theta.dimension() != d)
    throw std::invalid_argument("phase matrix is " + std::to_string(theta.dimension()) + "x" +
                                std::to_string(theta.dimension()) + " but d = " + std::to_string(d));
}

VectorXc phased_product(const VectorXc& a, const VectorXc& b, const PhaseMatrix& theta) {
  const auto d = a.size();
  VectorXc out(d * d);
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index kp = 0; kp < d; ++kp)
      out(k * d + kp) = a(k) * b(kp) *
                        std::polar(1.0, -theta(static_cast<std::size_t>(k), static_cast<std::size_t>(kp)));
  return out;
}

// The (l,l') four-party pure branch sum_{k,k'} a_k b_k' |k k k' k'>.
PureState branch_state(const VectorXc& a, const VectorXc& b) {
  const auto d = static_cast<std::size_t>(a.size());
  VectorXc psi = VectorXc::Zero(a.size() * a.size());
  for (Eigen::Index k = 0; k < a.size(); ++k) psi(k * a.size() + k) = a(k);
  VectorXc chi = VectorXc::Zero(b.size() * b.size());
  for (Eigen::Index k = 0; k < b.size(); ++k) chi(k * b.size() + k) = b(k);
  return tensor_product(PureState(psi, {d, d}), PureState(chi, {d, d}));
}

double min_pairwise(const std::vector<State>& states) {
  double best = 1.0;
  for (std::size_t a = 0; a < states.size(); ++a)
    for (std::size_t b = a + 1; b < states.size(); ++b) {
      double f;
      if (const auto* pa = std::get_if<PureState>(&states[a]))
        f = fidelity(*pa, std::get<PureState>(states[b]));
      else
        f = fidelity(std::get<DensityMatrix>(states[a]), std::get<DensityMatrix>(states[b]));
      best = std::min(best, f);
    }
  return best;
}

}  // namespace

PureState predicted_final_state(const RVector<double>& lambda, const RVector<double>& eta, const PhaseMatrix& theta) {
  validate_weights(lambda, "lambda");
  validate_weights(eta, "eta");
  if (lambda.size() != eta.size()) throw std::invalid_argument("lambda and eta have different dimensions");
  const auto d = static_cast<std::size_t>(lambda.size());
  check_theta(d, theta);
  const VectorXc f = phased_product(lambda.cwiseSqrt().cast<Complex>(), eta.cwiseSqrt().cast<Complex>(), theta);
  return PureState(f / f.norm(), {d, d});
}

DensityMatrix predicted_final_state(const MixedClassSpec& a, const MixedClassSpec& b, const PhaseMatrix& theta) {
  a.validate();
  b.validate();
  if (a.dimension() != b.dimension()) throw std::invalid_argument("mixed-class specs have different dimensions");
  const auto d = a.dimension();
  check_theta(d, theta);
  const auto n = static_cast<Eigen::Index>(d * d);
  MatrixXc sigma = MatrixXc::Zero(n, n);
  for (std::size_t l = 0; l < a.num_terms(); ++l)
    for (std::size_t lp = 0; lp < b.num_terms(); ++lp) {
      const VectorXc phi = phased_product(a.amplitude_rows[l], b.amplitude_rows[lp], theta);
      sigma += a.weights(static_cast<Eigen::Index>(l)) * b.weights(static_cast<Eigen::Index>(lp)) * phi * phi.adjoint();
    }
  return DensityMatrix(std::move(sigma), {d, d});
}

ProtocolResult run_rpbes_pure(const RVector<double>& lambda, const RVector<double>& eta, const PhaseMatrix& theta) {
  const PureState predicted = predicted_final_state(lambda, eta, theta);
  const auto d = static_cast<std::size_t>(lambda.size());
  const PureState initial = tensor_product(schmidt_state(lambda), schmidt_state(eta));
  const Measurement supplier = rpbes_basis(d, theta);
  const Subsystems sapna{1, 2};

  ProtocolResult result{.dimension = d, .outcomes = {}, .corrected_states = {}, .final_state = predicted};
  const auto measured = apply_measurement(initial, supplier);
  double worst = 0.0;
  for (const auto& o : measured.outcomes) {
    const std::size_t j = o.labels[0] / d;
    const std::size_t jp = o.labels[0] % d;
    // Post-measurement state is |P(j,j')>_12 |phi>_03; peel off the supplier part.
    const PureState phi =
        project_subsystems(std::get<PureState>(o.state), rpbes_vector(d, j, jp, theta), sapna).normalized();
    result.outcomes.outcomes.push_back({{j, jp}, o.probability, phi});

    const auto u = correction_unitaries(d, j, jp);
    PureState corrected = apply_local_operator(apply_local_operator(phi, u.alice, {0}), u.bob, {1});
    worst = std::max(worst, 1.0 - fidelity(corrected, predicted));
    result.corrected_states.emplace_back(std::move(corrected));
  }
  const auto cost = classical_cost(d);
  result.classical_bits_alice = cost.bits_to_alice;
  result.classical_bits_bob = cost.bits_to_bob;
  result.min_pairwise_fidelity = min_pairwise(result.corrected_states);
  result.max_prediction_error = worst;
  return result;
}

ProtocolResult run_rpbes_mixed_class(const MixedClassSpec& a, const MixedClassSpec& b, const PhaseMatrix& theta) {
  const DensityMatrix predicted = predicted_final_state(a, b, theta);
  const auto d = a.dimension();
  const auto n = static_cast<Eigen::Index>(d * d);
  const Subsystems sapna{1, 2};
  const Dims ab_dims{d, d};

  std::vector<PureState> branches;
  std::vector<double> branch_weights;
  for (std::size_t l = 0; l < a.num_terms(); ++l)
    for (std::size_t lp = 0; lp < b.num_terms(); ++lp) {
      branches.push_back(branch_state(a.amplitude_rows[l], b.amplitude_rows[lp]));
      branch_weights.push_back(a.weights(static_cast<Eigen::Index>(l)) * b.weights(static_cast<Eigen::Index>(lp)));
    }

  ProtocolResult result{.dimension = d, .outcomes = {}, .corrected_states = {}, .final_state = predicted};
  double worst = 0.0;
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t jp = 0; jp < d; ++jp) {
      const VectorXc p = rpbes_vector(d, j, jp, theta);
      MatrixXc sigma = MatrixXc::Zero(n, n);
      for (std::size_t br = 0; br < branches.size(); ++br) {
        const VectorXc phi = project_subsystems(branches[br], p, sapna).amplitudes();
        sigma += branch_weights[br] * phi * phi.adjoint();
      }
      const double q = sigma.trace().real();
      if (q < kZeroProbability) continue;
      const DensityMatrix measured(sigma / q, ab_dims);
      result.outcomes.outcomes.push_back({{j, jp}, q, measured});

      const auto u = correction_unitaries(d, j, jp);
      DensityMatrix corrected = apply_local_operator(apply_local_operator(measured, u.alice, {0}), u.bob, {1});
      worst = std::max(worst, (corrected.matrix() - predicted.matrix()).cwiseAbs().maxCoeff());
      result.corrected_states.emplace_back(std::move(corrected));
    }
  const auto cost = classical_cost(d);
  result.classical_bits_alice = cost.bits_to_alice;
  result.classical_bits_bob = cost.bits_to_bob;
  result.min_pairwise_fidelity = min_pairwise(result.corrected_states);
  result.max_prediction_error = worst;
  return result;
}

}  // namespace redsim
