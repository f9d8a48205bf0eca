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
#include "redsim/protocol.hpp"
#include "redsim/quantum_core.hpp"
#include "redsim/random.hpp"
#include "test_support.hpp"

using namespace redsim;
using redsim::testing::bell_state;

TEST_CASE("tensor product of basis states") {
  const auto zero = PureState::basis({2}, 0);
  const auto both = tensor_product(zero, zero);
  CHECK(both.dims() == Dims{2, 2});
  CHECK(both.amplitudes().isApprox(PureState::basis({2, 2}, 0).amplitudes()));
}

TEST_CASE("tensor product preserves norm and trace") {
  const auto bb = tensor_product(bell_state(), bell_state());
  CHECK(bb.dimension() == 16);
  CHECK(bb.norm() == doctest::Approx(1.0).epsilon(1e-14));

  Rng rng(11);
  const auto rho = random_density_matrix({2, 2}, 3, rng);
  const auto sigma = random_density_matrix({3}, 2, rng);
  const auto prod = tensor_product(rho, sigma);
  CHECK(prod.dims() == Dims{2, 2, 3});
  CHECK(std::abs(prod.trace() - 1.0) < 1e-12);
  CHECK(prod.is_valid());
}

TEST_CASE("variant tensor product rejects mixed kinds") {
  const State a = bell_state();
  const State b = bell_state().density();
  CHECK_THROWS_AS(tensor_product<double>(a, b), std::invalid_argument);
  CHECK_NOTHROW(tensor_product<double>(a, a));
}

TEST_CASE("states validate shape and normalization") {
  CHECK_THROWS_AS(PureState(VectorXc::Zero(3), {2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(PureState(VectorXc::Zero(2), {1, 2}), std::invalid_argument);
  CHECK_FALSE(PureState(VectorXc::Ones(4), {2, 2}).is_valid());
  CHECK_THROWS(PureState(VectorXc::Ones(4), {2, 2}).require_valid());
  CHECK(PureState(VectorXc::Ones(4) / 2.0, {2, 2}).is_valid());

  MatrixXc not_psd = MatrixXc::Zero(2, 2);
  not_psd(0, 0) = 1.5;
  not_psd(1, 1) = -0.5;
  CHECK_FALSE(DensityMatrix(not_psd, {2}).is_valid());
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
  const auto rho = bell_state().density();
  const auto reduced = partial_trace(rho, {0});
  CHECK(reduced.matrix().isApprox(MatrixXc::Identity(2, 2) / 2.0, 1e-14));
  CHECK(partial_trace(bell_state(), {1}).matrix().isApprox(MatrixXc::Identity(2, 2) / 2.0, 1e-14));
}

TEST_CASE("partial trace keeping everything is the identity map") {
  Rng rng(3);
  const auto rho = random_density_matrix({2, 3}, 4, rng);
  CHECK(partial_trace(rho, {1, 0}).matrix() == rho.matrix());
}

TEST_CASE("partial trace rejects an empty keep set and bad indices") {
  const auto rho = bell_state().density();
  CHECK_THROWS_AS(partial_trace(rho, {}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(rho, {2}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(rho, {0, 0}), std::invalid_argument);
}

TEST_CASE("Tr_12 of the four-party product gives rho_0 x rho_3") {
  RVector<double> lambda(2), eta(2);
  lambda << 0.8, 0.2;
  eta << 0.6, 0.4;
  const auto psi = schmidt_state(lambda);
  const auto chi = schmidt_state(eta);
  const auto full = tensor_product(psi.density(), chi.density());
  const auto kept = partial_trace(full, {3, 0});
  CHECK(kept.dims() == Dims{2, 2});

  // Independent route: reduce each factor by explicit sums, then kron.
  const MatrixXc rho0 = redsim::testing::trace_second(psi.density().matrix(), 2, 2);
  MatrixXc chi_swapped = MatrixXc::Zero(4, 4);  // reorder to (3, 2) then trace 2
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp) chi_swapped(b * 2 + a, bp * 2 + ap) = chi.density().matrix()(a * 2 + b, ap * 2 + bp);
  const MatrixXc rho3 = redsim::testing::trace_second(chi_swapped, 2, 2);
  CHECK((kept.matrix() - kron<double>(rho0, rho3)).cwiseAbs().maxCoeff() < 1e-14);
  // Diagonal blocks: diag(0.8, 0.2) x diag(0.6, 0.4).
  CHECK(std::abs(kept.matrix()(0, 0) - 0.48) < 1e-14);
  CHECK(std::abs(kept.matrix()(3, 3) - 0.08) < 1e-14);
}

TEST_CASE("partial trace preserves trace and inverts the tensor product") {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const Dims da{2 + rng.index(2)};
    const Dims db{2 + rng.index(2), 2};
    const auto a = random_density_matrix(da, 1 + rng.index(total_dimension(da)), rng);
    const auto b = random_density_matrix(db, 1 + rng.index(total_dimension(db)), rng);
    const auto ab = tensor_product(a, b);
    CHECK(std::abs(partial_trace(ab, {1, 2}).trace() - ab.trace()) < 1e-12);
    CHECK((partial_trace(ab, {0}).matrix() - a.matrix()).cwiseAbs().maxCoeff() < 1e-10);
    // Pure-state route agrees with the density route.
    const auto psi = random_pure_state({2, 3, 2}, rng);
    CHECK((partial_trace(psi, {0, 2}).matrix() - partial_trace(psi.density(), {0, 2}).matrix()).cwiseAbs().maxCoeff() <
          1e-13);
  }
}

TEST_CASE("Schmidt decomposition of simple states") {
  const auto bell = schmidt_decomposition(bell_state(), {0});
  CHECK(bell.coefficients(0) == doctest::Approx(0.5));
  CHECK(bell.coefficients(1) == doctest::Approx(0.5));
  const auto product = schmidt_decomposition(PureState::basis({2, 2}, 0), {0});
  CHECK(product.coefficients(0) == doctest::Approx(1.0));
  CHECK(product.coefficients(1) == 0.0);
  CHECK(product.rank() == 1);
}

TEST_CASE("Schmidt decomposition reconstructs random states") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto psi = random_pure_state({3, 3}, rng);
    const auto form = schmidt_decomposition(psi, {0});
    CHECK(std::abs(form.coefficients.sum() - 1.0) < 1e-10);
    for (Eigen::Index k = 1; k < form.coefficients.size(); ++k) CHECK(form.coefficients(k - 1) >= form.coefficients(k));
    CHECK(fidelity(form.reconstruct(), psi) >= 1.0 - 1e-10);
  }
  // A cut that is not a prefix, across three subsystems.
  const auto psi = random_pure_state({2, 3, 2}, rng);
  const auto form = schmidt_decomposition(psi, {2, 0});
  CHECK(form.coefficients.size() == 3);
  CHECK(fidelity(form.reconstruct(), psi) >= 1.0 - 1e-10);
}

TEST_CASE("Schmidt decomposition rejects invalid cuts") {
  CHECK_THROWS_AS(schmidt_decomposition(bell_state(), {}), std::invalid_argument);
  CHECK_THROWS_AS(schmidt_decomposition(bell_state(), {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(schmidt_decomposition(bell_state(), {4}), std::invalid_argument);
}

TEST_CASE("Schmidt coefficients are invariant under local unitaries") {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto psi = random_pure_state({3, 2}, rng);
    const auto u = haar_unitary(3, rng);
    const auto v = haar_unitary(2, rng);
    const auto rotated = apply_local_operator(apply_local_operator(psi, u, {0}), v, {1});
    const auto a = schmidt_decomposition(psi, {0}).coefficients;
    const auto b = schmidt_decomposition(rotated, {0}).coefficients;
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("apply_local_operator basics") {
  Rng rng(2);
  const auto psi = random_pure_state({2, 3}, rng);
  CHECK(apply_local_operator(psi, MatrixXc(MatrixXc::Identity(3, 3)), {1}).amplitudes().isApprox(psi.amplitudes()));

  MatrixXc x = MatrixXc::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  const auto one = apply_local_operator(PureState::basis({2}, 0), x, {0});
  CHECK(one.amplitudes().isApprox(PureState::basis({2}, 1).amplitudes()));

  // Alice's correction for d = 2, j' = 1 puts e^{i pi} on |1>.
  const auto u = correction_unitaries(2, 0, 1).alice;
  const auto phased = apply_local_operator(PureState::basis({2}, 1), u, {0});
  CHECK(std::abs(phased.amplitudes()(1) - std::polar(1.0, kPi)) < 1e-15);

  CHECK_THROWS_AS(apply_local_operator(psi, MatrixXc(MatrixXc::Identity(2, 2)), {1}), std::invalid_argument);
  CHECK_THROWS_AS(apply_local_operator(psi.density(), MatrixXc(MatrixXc::Identity(2, 2)), {0, 1}), std::invalid_argument);
}

TEST_CASE("apply_local_operator agrees with the embedded Kronecker operator") {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto psi = random_pure_state({2, 3, 2}, rng);
    const MatrixXc op = ginibre(4, 4, rng);
    // Target order {2, 0}: embed by permuting to (2, 0, 1), applying op x I, and back.
    const MatrixXc full_on_perm = kron<double>(op, MatrixXc::Identity(3, 3));
    const auto perm = detail::permute_subsystems<double>(psi.amplitudes(), psi.dims(), {2, 0, 1});
    const VectorXc expect_perm = full_on_perm * perm;
    const auto got = apply_local_operator(psi, op, {2, 0});
    const auto got_perm = detail::permute_subsystems<double>(got.amplitudes(), got.dims(), {2, 0, 1});
    CHECK((got_perm - expect_perm).cwiseAbs().maxCoeff() < 1e-12);

    const auto rho = psi.density();
    const auto out = apply_local_operator(rho, op, {2, 0});
    CHECK((out.matrix() - got.amplitudes() * got.amplitudes().adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("project_subsystems peels off a product factor") {
  Rng rng(9);
  const auto a = random_pure_state({2}, rng);
  const auto b = random_pure_state({3}, rng);
  const auto c = random_pure_state({2}, rng);
  const auto abc = tensor_product(tensor_product(a, b), c);
  const auto rest = project_subsystems(abc, b.amplitudes(), {1});
  CHECK(rest.dims() == Dims{2, 2});
  CHECK(fidelity(rest, tensor_product(a, c)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rest.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Uhlmann fidelity reduces to the pure overlap") {
  Rng rng(10);
  const auto a = random_pure_state({2, 2}, rng);
  const auto b = random_pure_state({2, 2}, rng);
  CHECK(fidelity(a.density(), b.density()) == doctest::Approx(fidelity(a, b)).epsilon(1e-7));
  CHECK(fidelity(a, b.density()) == doctest::Approx(fidelity(a, b)).epsilon(1e-12));
  const auto rho = random_density_matrix({2, 2}, 4, rng);
  CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("single-precision instantiation compiles and runs") {
  using PureF = BasicPureState<float>;
  CVector<float> v(4);
  v << 1.0f, 0.0f, 0.0f, 1.0f;
  const PureF psi(v / std::sqrt(2.0f), {2, 2});
  const auto form = schmidt_decomposition(psi, {0});
  CHECK(form.coefficients(0) == doctest::Approx(0.5f).epsilon(1e-5));
  CHECK(partial_trace(psi, {0}).trace() == doctest::Approx(1.0f).epsilon(1e-6));
}
