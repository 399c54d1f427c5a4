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

// Acquisition functions: the objective criterion (UCB over the objective
// threshold), the constraint criterion (interval width on the undecided
// set), the cross-aspect selection rule, and the constrained EI baseline.

#ifndef COBALT_ACQUISITION_HPP
#define COBALT_ACQUISITION_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "cobalt/bounds.hpp"
#include "cobalt/gp.hpp"
#include "cobalt/regions.hpp"

namespace cobalt {

/// 0 is the objective; k >= 1 is constraint k.
struct Aspect {
  int index = 0;

  static Aspect objective() { return {0}; }
  static Aspect constraint(int k) { return {k}; }
  bool isObjective() const { return index == 0; }
  std::string label() const { return isObjective() ? "objective" : "constraint_" + std::to_string(index); }
  friend bool operator==(Aspect, Aspect) = default;
};

struct AspectProposal {
  Aspect aspect;
  Eigen::Index candidate = -1;
  double value = 0.0;
};

/// Counts values clamped to zero after coming out below -1e-12.
struct AcquisitionDiagnostics {
  std::size_t negativeClamps = 0;
};

/// argmax over `domain` of ucb_f - lcbFMax, or of ucb_f - lcb_f when lcbFMax
/// is -inf. `scale` divides the value (the objective's standardization scale).
AspectProposal acqObjective(const FunctionBounds& objective, const IndexSet& domain, double lcbFMax,
                            double scale = 1.0, AcquisitionDiagnostics* diag = nullptr);

/// argmax of the interval width over the undecided set; empty when U is empty.
std::optional<AspectProposal> acqConstraint(const FunctionBounds& constraint, const IndexSet& undecided, int k,
                                            double scale = 1.0, AcquisitionDiagnostics* diag = nullptr);

/// Largest value wins; ties go to the objective, then the lowest constraint.
AspectProposal selectAspect(std::span<const AspectProposal> proposals);

double expectedImprovement(double mean, double stdDev, double best);

/// Pr(c > h) under N(mean, stdDev^2); a step function when stdDev is zero.
double probabilityOfFeasibility(double mean, double stdDev, double threshold);

struct CeiChoice {
  Eigen::Index index = -1;
  double value = 0.0;
};

/// Constrained expected improvement over the whole grid. Without a feasible
/// incumbent the probability of feasibility alone is maximized.
CeiChoice cEI(const PosteriorTabled& objective, std::span<const PosteriorTabled> constraints,
              std::span<const double> thresholds, std::optional<double> bestFeasibleValue);

}  // namespace cobalt

#endif  // COBALT_ACQUISITION_HPP
