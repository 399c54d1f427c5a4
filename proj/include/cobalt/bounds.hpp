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

// Confidence bounds mu +/- sqrt(beta) sigma, the beta schedule, and the
// running intersection that keeps the intervals nested over iterations.

#ifndef COBALT_BOUNDS_HPP
#define COBALT_BOUNDS_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "cobalt/gp.hpp"

namespace cobalt {

enum class BetaMode { Scheduled, Constant };

struct BetaSchedule {
  double delta = 0.1;
  int numConstraints = 0;
  Eigen::Index gridSize = 1;
  BetaMode mode = BetaMode::Scheduled;
  double constantValue = 4.0;

  /// pi_t = pi^2 t^2 / 6, whose reciprocals sum to one.
  static double piT(int t);
};

/// beta_t = 2 log(2 (K+1) |D| pi_t / delta) in scheduled mode.
double beta(const BetaSchedule& schedule, int t);

struct FunctionBounds {
  Eigen::VectorXd ucb;
  Eigen::VectorXd lcb;

  Eigen::VectorXd width() const { return ucb - lcb; }
  Eigen::Index size() const { return ucb.size(); }
};

/// Index 0 is the objective, index k >= 1 is constraint k.
struct BoundsTable {
  std::vector<FunctionBounds> functions;
  int iteration = 0;
  std::size_t crossings = 0;  // midpoint collapses in the step that produced this table

  const FunctionBounds& objective() const { return functions.front(); }
  const FunctionBounds& constraint(int k) const { return functions.at(static_cast<std::size_t>(k)); }
  int numConstraints() const { return static_cast<int>(functions.size()) - 1; }
};

FunctionBounds computeBounds(const PosteriorTabled& post, double betaValue);

/// Intersects `raw` with `previous` in place. Points where the intersection
/// is empty collapse to the midpoint; returns how many did.
std::size_t enforceMonotone(const FunctionBounds& previous, FunctionBounds& raw);

BoundsTable enforceMonotone(const BoundsTable& previous, BoundsTable raw);

}  // namespace cobalt

#endif  // COBALT_BOUNDS_HPP
