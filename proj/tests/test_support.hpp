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

// Independent reference computations used as oracles by the unit tests.
// Nothing here calls into the implementation paths it is used to check.

#pragma once

#include <Eigen/Eigenvalues>

#include "redsim/quantum_core.hpp"
#include "redsim/random.hpp"

namespace redsim::testing {

/// Tr(rho_A^2) for a bipartite vector with local dimensions (da, db), by
/// explicit index sums.
inline double reduced_purity(const VectorXc& psi, std::size_t da, std::size_t db) {
  MatrixXc rho_a = MatrixXc::Zero(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(da));
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t ap = 0; ap < da; ++ap)
      for (std::size_t b = 0; b < db; ++b)
        rho_a(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(ap)) +=
            psi(static_cast<Eigen::Index>(a * db + b)) * std::conj(psi(static_cast<Eigen::Index>(ap * db + b)));
  return (rho_a * rho_a).trace().real();
}

/// Pure-state concurrence from the reduced purity.
inline double concurrence_by_purity(const VectorXc& psi, std::size_t da, std::size_t db) {
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - reduced_purity(psi, da, db))));
}

/// Wootters concurrence via the eigenvalues of the non-Hermitian product
/// rho (Y x Y) rho^* (Y x Y). Loses accuracy near rank-deficient inputs
/// (sqrt of roundoff), so only use with tolerances around 1e-7.
inline double wootters_by_eigenvalues(const MatrixXc& rho) {
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const MatrixXc r = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<MatrixXc> es(r);
  std::vector<double> mu;
  for (Eigen::Index k = 0; k < 4; ++k) mu.push_back(std::sqrt(std::abs(es.eigenvalues()(k))));
  std::sort(mu.rbegin(), mu.rend());
  return std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]);
}

/// Tr_B of a (da*db) x (da*db) matrix by explicit sums.
inline MatrixXc trace_second(const MatrixXc& m, std::size_t da, std::size_t db) {
  MatrixXc out = MatrixXc::Zero(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(da));
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t ap = 0; ap < da; ++ap)
      for (std::size_t b = 0; b < db; ++b)
        out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(ap)) +=
            m(static_cast<Eigen::Index>(a * db + b), static_cast<Eigen::Index>(ap * db + b));
  return out;
}

/// max |G - I| for the Gram matrix of the columns of v.
inline double gram_error(const std::vector<VectorXc>& vectors) {
  double worst = 0.0;
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = 0; j < vectors.size(); ++j) {
      const Complex g = vectors[i].dot(vectors[j]);
      worst = std::max(worst, std::abs(g - Complex(i == j ? 1.0 : 0.0)));
    }
  return worst;
}

inline RVector<double> weights2(double first) {
  RVector<double> w(2);
  w << first, 1.0 - first;
  return w;
}

/// q |chi+><chi+| + (1-q) |chi-><chi-|.
inline DensityMatrix bell_mixture(double q) {
  const double s = std::sqrt(0.5);
  VectorXc plus(4), minus(4);
  plus << s, 0, 0, s;
  minus << s, 0, 0, -s;
  return DensityMatrix(q * plus * plus.adjoint() + (1.0 - q) * minus * minus.adjoint(), {2, 2});
}

inline PureState bell_state() {
  const double s = std::sqrt(0.5);
  VectorXc v(4);
  v << s, 0, 0, s;
  return PureState(v, {2, 2});
}

}  // namespace redsim::testing
