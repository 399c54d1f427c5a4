// Copyright 2026 The cobalt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cobalt/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cobalt {

double BetaSchedule::piT(int t) {
  const double td = static_cast<double>(t);
  return std::numbers::pi * std::numbers::pi * td * td / 6.0;
}

double beta(const BetaSchedule& schedule, int t) {
  if (t < 1) throw std::invalid_argument("beta: iteration must be >= 1");
  if (schedule.mode == BetaMode::Constant) {
    if (!(schedule.constantValue > 0.0)) throw std::invalid_argument("beta: constant value must be positive");
    return schedule.constantValue;
  }
  if (!(schedule.delta > 0.0 && schedule.delta < 1.0)) throw std::invalid_argument("beta: delta must be in (0, 1)");
  const double k1 = static_cast<double>(schedule.numConstraints + 1);
  return 2.0 * std::log(2.0 * k1 * static_cast<double>(schedule.gridSize) * BetaSchedule::piT(t) / schedule.delta);
}

FunctionBounds computeBounds(const PosteriorTabled& post, double betaValue) {
  if (!(betaValue > 0.0)) throw std::invalid_argument("computeBounds: beta must be positive");
  const double root = std::sqrt(betaValue);
  FunctionBounds b;
  b.ucb = post.mean + root * post.stdDev;
  b.lcb = post.mean - root * post.stdDev;
  return b;
}

std::size_t enforceMonotone(const FunctionBounds& previous, FunctionBounds& raw) {
  if (previous.size() != raw.size()) throw std::invalid_argument("enforceMonotone: size mismatch");
  std::size_t crossings = 0;
  for (Eigen::Index i = 0; i < raw.size(); ++i) {
    double u = std::min(raw.ucb(i), previous.ucb(i));
    double l = std::max(raw.lcb(i), previous.lcb(i));
    if (l > u) {
      const double mid = 0.5 * (l + u);
      u = l = mid;
      ++crossings;
    }
    raw.ucb(i) = u;
    raw.lcb(i) = l;
  }
  return crossings;
}

BoundsTable enforceMonotone(const BoundsTable& previous, BoundsTable raw) {
  if (previous.functions.size() != raw.functions.size())
    throw std::invalid_argument("enforceMonotone: function count mismatch");
  raw.crossings = 0;
  for (std::size_t g = 0; g < raw.functions.size(); ++g)
    raw.crossings += enforceMonotone(previous.functions[g], raw.functions[g]);
  return raw;
}

}  // namespace cobalt
