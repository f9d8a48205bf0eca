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

#pragma once

#include <numeric>

#include "redsim/quantum_core.hpp"

namespace redsim {

/// One branch of a measurement record. labels holds the outcome index of every
/// round that led here (j, then k, n, i for a four-round plan).
struct Outcome {
  std::vector<std::size_t> labels;
  double probability = 0.0;
  State state;
};

/// Probability-weighted list of post-measurement states ({Q_j, sigma_j}).
struct OutcomeDistribution {
  std::vector<Outcome> outcomes;

  double total_probability() const {
    return std::accumulate(outcomes.begin(), outcomes.end(), 0.0,
                           [](double acc, const Outcome& o) { return acc + o.probability; });
  }
  std::size_t size() const { return outcomes.size(); }
  bool empty() const { return outcomes.empty(); }
};

}  // namespace redsim
