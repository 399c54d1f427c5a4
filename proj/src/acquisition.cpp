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

#include "cobalt/acquisition.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cobalt/normal.hpp"

namespace cobalt {
namespace {

constexpr double kNegativeTolerance = -1e-12;

double clampValue(double v, AcquisitionDiagnostics* diag) {
  if (v >= 0.0) return v;
  if (v < kNegativeTolerance && diag) ++diag->negativeClamps;
  return 0.0;
}

}  // namespace

AspectProposal acqObjective(const FunctionBounds& objective, const IndexSet& domain, double lcbFMax, double scale,
                            AcquisitionDiagnostics* diag) {
  if (domain.empty()) throw std::invalid_argument("acqObjective: empty domain");
  const bool finite = lcbFMax > -std::numeric_limits<double>::infinity();
  AspectProposal best{Aspect::objective(), -1, -std::numeric_limits<double>::infinity()};
  for (Eigen::Index i : domain) {
    const double v = objective.ucb(i) - (finite ? lcbFMax : objective.lcb(i));
    if (v > best.value) {
      best.value = v;
      best.candidate = i;
    }
  }
  best.value = clampValue(best.value / scale, diag);
  return best;
}

std::optional<AspectProposal> acqConstraint(const FunctionBounds& constraint, const IndexSet& undecided, int k,
                                            double scale, AcquisitionDiagnostics* diag) {
  if (undecided.empty()) return std::nullopt;
  AspectProposal best{Aspect::constraint(k), -1, -std::numeric_limits<double>::infinity()};
  for (Eigen::Index i : undecided) {
    const double v = constraint.ucb(i) - constraint.lcb(i);
    if (v > best.value) {
      best.value = v;
      best.candidate = i;
    }
  }
  best.value = clampValue(best.value / scale, diag);
  return best;
}

AspectProposal selectAspect(std::span<const AspectProposal> proposals) {
  if (proposals.empty()) throw std::invalid_argument("selectAspect: no proposals");
  const AspectProposal* best = &proposals.front();
  for (const auto& p : proposals) {
    if (p.value > best->value || (p.value == best->value && p.aspect.index < best->aspect.index)) best = &p;
  }
  return *best;
}

double expectedImprovement(double mean, double stdDev, double best) {
  const double gap = mean - best;
  if (!(stdDev > 0.0)) return std::max(gap, 0.0);
  const double z = gap / stdDev;
  return gap * normalCdf(z) + stdDev * normalPdf(z);
}

double probabilityOfFeasibility(double mean, double stdDev, double threshold) {
  if (!(stdDev > 0.0)) return mean > threshold ? 1.0 : 0.0;
  return normalCdf((mean - threshold) / stdDev);
}

CeiChoice cEI(const PosteriorTabled& objective, std::span<const PosteriorTabled> constraints,
              std::span<const double> thresholds, std::optional<double> bestFeasibleValue) {
  if (constraints.size() != thresholds.size()) throw std::invalid_argument("cEI: one threshold per constraint");
  const Eigen::Index n = objective.mean.size();
  CeiChoice best{-1, -std::numeric_limits<double>::infinity()};
  for (Eigen::Index i = 0; i < n; ++i) {
    double pof = 1.0;
    for (std::size_t k = 0; k < constraints.size(); ++k)
      pof *= probabilityOfFeasibility(constraints[k].mean(i), constraints[k].stdDev(i), thresholds[k]);
    const double v =
        bestFeasibleValue ? expectedImprovement(objective.mean(i), objective.stdDev(i), *bestFeasibleValue) * pof
                          : pof;
    if (v > best.value) {
      best.value = v;
      best.index = i;
    }
  }
  return best;
}

}  // namespace cobalt
