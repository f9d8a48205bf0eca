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

// Seeded sampling of unitaries, states and weights. Every stochastic routine
// in the library takes an explicit Rng (or seed); nothing reads global state.

#pragma once

#include <cstdint>
#include <random>

#include "redsim/quantum_core.hpp"

namespace redsim {

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// mt19937_64 with a deterministic split: Rng(seed).split(i) depends only on
/// (seed, i), never on how much of the parent stream was consumed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  Rng split(std::uint64_t stream) const { return Rng(splitmix64(seed_ ^ splitmix64(stream + 0x632be59bd9b4e019ULL))); }

  std::uint64_t seed() const { return seed_; }
  std::mt19937_64& engine() { return engine_; }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Complex Ginibre matrix with entries of unit variance.
MatrixXc ginibre(std::size_t rows, std::size_t cols, Rng& rng);

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of R's
/// diagonal folded back into Q.
MatrixXc haar_unitary(std::size_t dim, Rng& rng);

/// Haar-random pure state on dims.
PureState random_pure_state(const Dims& dims, Rng& rng);

/// Random density matrix of the given rank (Hilbert-Schmidt-type: G G^dagger
/// normalized, G a dim x rank Ginibre matrix).
DensityMatrix random_density_matrix(const Dims& dims, std::size_t rank, Rng& rng);

/// Uniformly random point of the probability simplex with n entries.
RVector<double> random_simplex(std::size_t n, Rng& rng);

}  // namespace redsim
