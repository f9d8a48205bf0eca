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

#include "redsim/random.hpp"

namespace redsim {

MatrixXc ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  MatrixXc g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  const double s = std::sqrt(0.5);
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = Complex(s * rng.normal(), s * rng.normal());
  return g;
}

MatrixXc haar_unitary(std::size_t dim, Rng& rng) {
  const MatrixXc g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<MatrixXc> qr(g);
  MatrixXc q = qr.householderQ();
  const MatrixXc& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const double a = std::abs(r(k, k));
    if (a > 0.0) q.col(k) *= r(k, k) / a;
  }
  return q;
}

PureState random_pure_state(const Dims& dims, Rng& rng) {
  VectorXc v = ginibre(total_dimension(dims), 1, rng).col(0);
  return PureState(v / v.norm(), dims);
}

DensityMatrix random_density_matrix(const Dims& dims, std::size_t rank, Rng& rng) {
  const auto d = total_dimension(dims);
  if (rank < 1 || rank > d) throw std::invalid_argument("random_density_matrix: rank out of range");
  const MatrixXc g = ginibre(d, rank, rng);
  MatrixXc rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho), dims);
}

RVector<double> random_simplex(std::size_t n, Rng& rng) {
  RVector<double> w(static_cast<Eigen::Index>(n));
  for (Eigen::Index k = 0; k < w.size(); ++k) w(k) = -std::log(1.0 - rng.uniform());
  return w / w.sum();
}

}  // namespace redsim
