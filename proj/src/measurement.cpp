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

#include "redsim/measurement.hpp"

namespace redsim {

Measurement::Measurement(std::vector<MatrixXc> kraus, Subsystems target)
    : kraus_(std::move(kraus)), target_(std::move(target)) {
  if (kraus_.empty()) throw std::invalid_argument("measurement needs at least one Kraus operator");
  const auto d = kraus_.front().rows();
  for (const auto& k : kraus_)
    if (k.rows() != d || k.cols() != d) throw std::invalid_argument("Kraus operators must be square and equal-sized");
}

double Measurement::completeness_error() const {
  const auto d = kraus_.front().rows();
  MatrixXc sum = -MatrixXc::Identity(d, d);
  for (const auto& k : kraus_) sum += k.adjoint() * k;
  return sum.cwiseAbs().maxCoeff();
}

PhaseMatrix::PhaseMatrix(Eigen::MatrixXd theta) : theta_(std::move(theta)) {
  if (theta_.rows() != theta_.cols() || theta_.rows() < 1) throw std::invalid_argument("phase matrix must be square");
  if (!theta_.allFinite()) throw std::invalid_argument("phase matrix entries must be finite");
}

PhaseMatrix PhaseMatrix::bilinear(std::size_t d, double scale) {
  Eigen::MatrixXd t(d, d);
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t mp = 0; mp < d; ++mp)
      t(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(mp)) = scale * static_cast<double>(m * mp);
  return PhaseMatrix(std::move(t));
}

VectorXc rpbes_vector(std::size_t d, std::size_t j, std::size_t jp, const PhaseMatrix& theta) {
  if (d < 2) throw std::invalid_argument("rpbes basis needs d >= 2");
  if (theta.dimension() != d) throw std::invalid_argument("phase matrix dimension does not match d");
  if (j >= d || jp >= d) throw std::invalid_argument("rpbes outcome out of range");
  const double dd = static_cast<double>(d);
  const double label = static_cast<double>(d * j + jp);
  VectorXc v(static_cast<Eigen::Index>(d * d));
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t mp = 0; mp < d; ++mp) {
      const double phase = 2.0 * kPi / (dd * dd) * label * static_cast<double>(d * m + mp) + theta(m, mp);
      v(static_cast<Eigen::Index>(d * m + mp)) = std::polar(1.0 / dd, phase);
    }
  return v;
}

Measurement rpbes_basis(std::size_t d, const PhaseMatrix& theta, Subsystems target) {
  if (d < 2) throw std::invalid_argument("rpbes basis needs d >= 2");
  std::vector<MatrixXc> kraus;
  kraus.reserve(d * d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t jp = 0; jp < d; ++jp) {
      const VectorXc p = rpbes_vector(d, j, jp, theta);
      kraus.push_back(p * p.adjoint());
    }
  return Measurement(std::move(kraus), std::move(target));
}

namespace {

void check_applicable(const Dims& dims, const Measurement& m) {
  if (m.target().empty()) throw std::invalid_argument("measurement has no target subsystems");
  detail::check_subsystems(dims, m.target());
  if (total_dimension(detail::select(dims, m.target())) != m.dimension())
    throw std::invalid_argument("measurement dimension does not match its target subsystems");
  if (!m.is_complete())
    throw std::invalid_argument("Kraus operators violate completeness (error " +
                                std::to_string(m.completeness_error()) + ")");
}

}  // namespace

OutcomeDistribution apply_measurement(const DensityMatrix& rho, const Measurement& m) {
  check_applicable(rho.dims(), m);
  OutcomeDistribution dist;
  for (std::size_t j = 0; j < m.num_outcomes(); ++j) {
    DensityMatrix branch = apply_local_operator(rho, m[j], m.target());
    const double q = branch.trace();
    if (q < kZeroProbability) continue;
    dist.outcomes.push_back({{j}, q, DensityMatrix(branch.matrix() / q, rho.dims())});
  }
  return dist;
}

OutcomeDistribution apply_measurement(const PureState& psi, const Measurement& m) {
  check_applicable(psi.dims(), m);
  OutcomeDistribution dist;
  for (std::size_t j = 0; j < m.num_outcomes(); ++j) {
    PureState branch = apply_local_operator(psi, m[j], m.target());
    const double q = branch.amplitudes().squaredNorm();
    if (q < kZeroProbability) continue;
    dist.outcomes.push_back({{j}, q, PureState(branch.amplitudes() / std::sqrt(q), psi.dims())});
  }
  return dist;
}

Measurement random_projective_measurement(std::size_t dim, Rng& rng, Subsystems target) {
  if (dim < 2) throw std::invalid_argument("random_projective_measurement needs dim >= 2");
  const MatrixXc u = haar_unitary(dim, rng);
  std::vector<MatrixXc> kraus;
  kraus.reserve(dim);
  for (Eigen::Index k = 0; k < u.cols(); ++k) kraus.push_back(u.col(k) * u.col(k).adjoint());
  return Measurement(std::move(kraus), std::move(target));
}

Measurement random_projective_measurement(std::size_t dim, std::uint64_t seed, Subsystems target) {
  Rng rng(seed);
  return random_projective_measurement(dim, rng, std::move(target));
}

Measurement random_kraus_channel(std::size_t dim, std::size_t n_outcomes, Rng& rng, Subsystems target) {
  if (dim < 2) throw std::invalid_argument("random_kraus_channel needs dim >= 2");
  if (n_outcomes < 1) throw std::invalid_argument("random_kraus_channel needs at least one outcome");
  const MatrixXc u = haar_unitary(dim * n_outcomes, rng);
  const auto d = static_cast<Eigen::Index>(dim);
  std::vector<MatrixXc> kraus;
  kraus.reserve(n_outcomes);
  for (std::size_t k = 0; k < n_outcomes; ++k) kraus.push_back(u.block(static_cast<Eigen::Index>(k) * d, 0, d, d));
  return Measurement(std::move(kraus), std::move(target));
}

Measurement random_kraus_channel(std::size_t dim, std::size_t n_outcomes, std::uint64_t seed, Subsystems target) {
  Rng rng(seed);
  return random_kraus_channel(dim, n_outcomes, rng, std::move(target));
}

Measurement unitary_channel(const MatrixXc& u, Subsystems target) { return Measurement({u}, std::move(target)); }

Measurement computational_basis_measurement(std::size_t dim, Subsystems target) {
  std::vector<MatrixXc> kraus;
  for (std::size_t k = 0; k < dim; ++k) {
    MatrixXc p = MatrixXc::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    p(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 1.0;
    kraus.push_back(std::move(p));
  }
  return Measurement(std::move(kraus), std::move(target));
}

}  // namespace redsim
