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

#include "redsim/common.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace redsim {
namespace {
std::atomic<double> g_tolerance{1e-10};
}

double tolerance() { return g_tolerance.load(std::memory_order_relaxed); }

void set_tolerance(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  g_tolerance.store(tol, std::memory_order_relaxed);
}

double load_tolerance_from_env() {
  if (const char* env = std::getenv("RED_SIM_TOLERANCE")) {
    char* end = nullptr;
    double value = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(value > 0.0) || !std::isfinite(value))
      throw std::invalid_argument(std::string("RED_SIM_TOLERANCE must be a positive number, got '") + env + "'");
    set_tolerance(value);
  }
  return tolerance();
}

std::string to_string(const Dims& dims) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < dims.size(); ++i) out << (i ? "," : "") << dims[i];
  out << ']';
  return out.str();
}

}  // namespace redsim
