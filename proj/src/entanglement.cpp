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

#include "redsim/entanglement.hpp"

#include <algorithm>

namespace redsim {

namespace {

void require_two_qubit(const DensityMatrix& rho) {
  if (rho.dims() != Dims{2, 2})
    throw std::invalid_argument("expected a two-qubit density matrix, got dims " + to_string(rho.dims()));
}

// Columns are the subnormalized eigenvectors sqrt(e_i) |e_i> of rho, largest
// eigenvalue first, so that rho = V V^dagger.
MatrixXc subnormalized_eigenvectors(const MatrixXc& m) {
  const MatrixXc h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(h);
  const auto n = h.rows();
  MatrixXc v(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = n - 1 - k;
    v.col(k) = std::sqrt(std::max(es.eigenvalues()(src), 0.0)) * es.eigenvectors().col(src);
  }
  return v;
}

// tau_ij = <v_i | (Y x Y) | v_j^*>, complex symmetric.
MatrixXc tilde_overlaps(const MatrixXc& v) { return v.adjoint() * detail::spin_flip() * v.conjugate(); }

}  // namespace

namespace detail {

Eigen::Matrix4cd spin_flip() {
  Eigen::Matrix4cd y = Eigen::Matrix4cd::Zero();
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  return y;
}

Takagi takagi(const MatrixXc& a) {
  const auto n = a.rows();
  Eigen::MatrixXd m(2 * n, 2 * n);
  m << a.real(), a.imag(), a.imag(), -a.real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);

  // Eigenpairs come as (s, [x; y]) and (-s, [-y; x]). Walk the spectrum from
  // the top and keep vectors orthogonal to everything already chosen and its
  // partner; this also splits a degenerate zero eigenspace correctly.
  std::vector<Eigen::VectorXd> chosen;
  Takagi out;
  out.u = MatrixXc::Zero(n, n);
  out.values = RVector<double>::Zero(n);
  for (Eigen::Index k = 2 * n - 1; k >= 0 && static_cast<Eigen::Index>(chosen.size()) < n; --k) {
    Eigen::VectorXd w = es.eigenvectors().col(k);
    for (const auto& c : chosen) {
      Eigen::VectorXd partner(2 * n);
      partner << -c.tail(n), c.head(n);
      w -= w.dot(c) * c;
      w -= w.dot(partner) * partner;
    }
    const double norm = w.norm();
    if (norm < 1e-3) continue;
    w /= norm;
    const auto col = static_cast<Eigen::Index>(chosen.size());
    out.u.col(col) = w.head(n).cast<Complex>() + Complex(0, 1) * w.tail(n).cast<Complex>();
    out.values(col) = std::max(es.eigenvalues()(k), 0.0);
    chosen.push_back(std::move(w));
  }
  return out;
}

std::array<double, 4> closing_phases(const std::array<double, 4>& w) {
  std::array<double, 4> phi{0.0, 0.0, 0.0, 0.0};
  if (w[1] <= 0.0) return phi;  // all weights vanish
  const double len = std::max(w[0] - w[1], w[2] - w[3]);
  double cos_a = (len * len - w[0] * w[0] - w[1] * w[1]) / (2.0 * std::max(w[0], 1e-300) * w[1]);
  if (w[0] <= 0.0) cos_a = -1.0;
  phi[1] = std::acos(std::clamp(cos_a, -1.0, 1.0));
  const Complex rest = -(w[0] + w[1] * std::polar(1.0, phi[1]));
  if (w[2] <= 0.0) return phi;
  if (std::abs(rest) < 1e-15) {
    phi[2] = 0.0;
    phi[3] = kPi;
    return phi;
  }
  const double l = std::abs(rest);
  const double beta = std::arg(rest);
  const double cos_g = (l * l + w[2] * w[2] - w[3] * w[3]) / (2.0 * l * w[2]);
  phi[2] = beta + std::acos(std::clamp(cos_g, -1.0, 1.0));
  const Complex last = rest - w[2] * std::polar(1.0, phi[2]);
  phi[3] = std::abs(last) > 0.0 ? std::arg(last) : 0.0;
  return phi;
}

}  // namespace detail

DensityMatrix reconstruct(const Decomposition& decomposition) {
  if (decomposition.empty()) throw std::invalid_argument("reconstruct: empty decomposition");
  const auto& dims = decomposition.front().state.dims();
  const auto d = static_cast<Eigen::Index>(total_dimension(dims));
  MatrixXc rho = MatrixXc::Zero(d, d);
  for (const auto& term : decomposition) {
    if (term.state.dims() != dims) throw std::invalid_argument("reconstruct: inconsistent dims");
    rho += term.weight * term.state.amplitudes() * term.state.amplitudes().adjoint();
  }
  return DensityMatrix(std::move(rho), dims);
}

double concurrence_from_weights(const RVector<double>& weights) {
  // 1 - sum w_i^2 = 2 sum_{i<j} w_i w_j for normalized weights; the pair sum
  // has no cancellation, so near-product states keep full precision.
  double pairs = 0.0;
  double prefix = 0.0;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    pairs += weights(i) * prefix;
    prefix += weights(i);
  }
  return std::sqrt(4.0 * pairs / (prefix * prefix));
}

double concurrence_pure(const PureState& psi, const Subsystems& part_a) {
  psi.require_valid();
  return concurrence_from_weights(schmidt_decomposition(psi, part_a).coefficients);
}

Eigen::Vector4d wootters_spectrum(const DensityMatrix& rho) {
  require_two_qubit(rho);
  // Singular values of tau equal the square roots of the eigenvalues of
  // rho rho~ without taking a matrix square root of rho.
  const MatrixXc tau = tilde_overlaps(subnormalized_eigenvectors(rho.matrix()));
  Eigen::JacobiSVD<MatrixXc> svd(tau);
  return svd.singularValues();
}

double concurrence_two_qubit(const DensityMatrix& rho) {
  rho.require_valid();
  const auto mu = wootters_spectrum(rho);
  return std::max(0.0, mu(0) - mu(1) - mu(2) - mu(3));
}

double weighted_concurrence_two_qubit(const MatrixXc& unnormalized) {
  if (unnormalized.rows() != 4 || unnormalized.cols() != 4)
    throw std::invalid_argument("weighted_concurrence_two_qubit expects a 4x4 matrix");
  Eigen::JacobiSVD<MatrixXc> svd(tilde_overlaps(subnormalized_eigenvectors(unnormalized)));
  const auto mu = svd.singularValues();
  return std::max(0.0, mu(0) - mu(1) - mu(2) - mu(3));
}

double concurrence(const State& state) {
  if (const auto* psi = std::get_if<PureState>(&state)) {
    if (psi->num_subsystems() != 2)
      throw std::invalid_argument("concurrence of a pure state needs exactly two subsystems, got dims " +
                                  to_string(psi->dims()));
    return concurrence_pure(*psi, {0});
  }
  return concurrence_two_qubit(std::get<DensityMatrix>(state));
}

double binary_entropy(double p) {
  auto term = [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; };
  return term(p) + term(1.0 - p);
}

double entanglement_of_formation(double c) {
  if (!(c >= 0.0) || c > 1.0 + 1e-12)
    throw std::invalid_argument("entanglement_of_formation is defined for 0 <= C <= 1, got " + std::to_string(c));
  c = std::min(c, 1.0);
  return binary_entropy((1.0 + std::sqrt(1.0 - c * c)) / 2.0);
}

double average_concurrence(const OutcomeDistribution& dist) {
  if (dist.empty()) throw std::invalid_argument("average_concurrence: empty distribution");
  const double total = dist.total_probability();
  if (std::abs(total - 1.0) > 1e-8)
    throw std::invalid_argument("average_concurrence: probabilities sum to " + std::to_string(total));
  double acc = 0.0;
  for (const auto& o : dist.outcomes) acc += o.probability * concurrence(o.state);
  return acc;
}

Decomposition optimal_equal_concurrence_decomposition(const DensityMatrix& rho) {
  require_two_qubit(rho);
  rho.require_valid();

  const MatrixXc v = subnormalized_eigenvectors(rho.matrix());
  if (v.col(1).squaredNorm() < kZeroProbability) {
    const VectorXc psi = v.col(0) / v.col(0).norm();
    return {DecompositionTerm{1.0, PureState(psi, rho.dims())}};
  }

  // x_i = sum_a U_ai v_a has <x_i | x~_j> = lambda_i delta_ij.
  const auto tk = detail::takagi(tilde_overlaps(v));
  const MatrixXc x = v * tk.u;
  const auto& lam = tk.values;
  const double excess = lam(0) - lam(1) - lam(2) - lam(3);
  const Complex i(0.0, 1.0);

  MatrixXc z(4, 4);
  if (excess >= 0.0) {
    // y_1 = x_1, y_j = i x_j: <y|y~> = diag(l1, -l2, -l3, -l4), trace = C.
    MatrixXc y = x;
    for (Eigen::Index k = 1; k < 4; ++k) y.col(k) *= i;
    Eigen::Matrix4d k_mat = -excess * (y.adjoint() * y).real();
    k_mat(0, 0) += lam(0);
    for (Eigen::Index k = 1; k < 4; ++k) k_mat(k, k) -= lam(k);
    // Real rotation O with O K O^T zero on the diagonal; z_i = sum_j O_ij y_j
    // then satisfies <z_i|z~_i> = C <z_i|z_i>. K is traceless, so each Givens
    // step zeroes one diagonal entry and at most three are needed.
    Eigen::Matrix4d o = Eigen::Matrix4d::Identity();
    for (int step = 0; step < 4; ++step) {
      Eigen::Index hi = 0, lo = 0;
      const double kmax = k_mat.diagonal().maxCoeff(&hi);
      const double kmin = k_mat.diagonal().minCoeff(&lo);
      if (kmax - kmin < 1e-15) break;
      const double kij = k_mat(hi, lo);
      const double t = (-kij - std::sqrt(kij * kij - kmax * kmin)) / kmin;
      const double c = 1.0 / std::sqrt(1.0 + t * t);
      const double s = t * c;
      Eigen::Matrix4d g = Eigen::Matrix4d::Identity();
      g(hi, hi) = c;
      g(hi, lo) = s;
      g(lo, hi) = -s;
      g(lo, lo) = c;
      k_mat = g * k_mat * g.transpose();
      o = g * o;
    }
    z = y * o.transpose().cast<Complex>();
  } else {
    // Concurrence zero: rotate phases so sum_j lambda_j e^{i phi_j} = 0, then
    // every member of the Hadamard mixture has <z|z~> = (1/4) sum = 0.
    const auto phi = detail::closing_phases({lam(0), lam(1), lam(2), lam(3)});
    MatrixXc y = x;
    for (Eigen::Index k = 0; k < 4; ++k) y.col(k) *= std::polar(1.0, -phi[static_cast<std::size_t>(k)] / 2.0);
    Eigen::Matrix4d h;
    h << 1, 1, 1, 1, 1, 1, -1, -1, 1, -1, 1, -1, 1, -1, -1, 1;
    z = y * (0.5 * h.transpose()).cast<Complex>();
  }

  Decomposition out;
  for (Eigen::Index k = 0; k < 4; ++k) {
    const double w = z.col(k).squaredNorm();
    if (w < 1e-14) continue;
    out.push_back({w, PureState(z.col(k) / std::sqrt(w), rho.dims())});
  }
  return out;
}

}  // namespace redsim
