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

#include "cobalt/regions.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace cobalt {

IndexSet intersect(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool isSubset(const IndexSet& sub, const IndexSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

bool contains(const IndexSet& set, Eigen::Index i) { return std::binary_search(set.begin(), set.end(), i); }

IndexSet fullSet(Eigen::Index n) {
  IndexSet out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = i;
  return out;
}

LevelSets partitionConstraint(const FunctionBounds& bounds, double threshold) {
  LevelSets sets;
  for (Eigen::Index i = 0; i < bounds.size(); ++i) {
    if (bounds.lcb(i) > threshold)
      sets.superlevel.push_back(i);
    else if (bounds.ucb(i) < threshold)
      sets.sublevel.push_back(i);
    else
      sets.undecided.push_back(i);
  }
  return sets;
}

double objectiveThreshold(const FunctionBounds& objective, const IndexSet& jointSuperlevel) {
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i : jointSuperlevel) best = std::max(best, objective.lcb(i));
  return best;
}

RegionPartition buildROIs(const BoundsTable& bounds, std::vector<LevelSets> levels,
                          std::vector<double> thresholds, double lcbFMax) {
  const int k = bounds.numConstraints();
  if (static_cast<int>(levels.size()) != k || static_cast<int>(thresholds.size()) != k)
    throw std::invalid_argument("buildROIs: one partition and threshold per constraint required");
  const Eigen::Index n = bounds.objective().size();

  RegionPartition part;
  part.lcbFMax = lcbFMax;
  part.roiConstraints = fullSet(n);
  part.jointSuperlevel = fullSet(n);
  for (int c = 0; c < k; ++c) {
    const auto& cb = bounds.constraint(c + 1);
    IndexSet roi;
    for (Eigen::Index i = 0; i < n; ++i)
      if (cb.ucb(i) >= thresholds[static_cast<std::size_t>(c)]) roi.push_back(i);
    part.roiConstraints = intersect(part.roiConstraints, roi);
    part.jointSuperlevel = intersect(part.jointSuperlevel, levels[static_cast<std::size_t>(c)].superlevel);
  }
  const auto& fb = bounds.objective();
  for (Eigen::Index i = 0; i < n; ++i)
    if (fb.ucb(i) >= lcbFMax) part.roiObjective.push_back(i);
  part.roiCombined = intersect(part.roiObjective, part.roiConstraints);

  if (!part.roiCombined.empty()) {
    part.searchRegion = part.roiCombined;
  } else if (!part.roiConstraints.empty()) {
    part.fallback = RoiFallback::Constraints;
    part.searchRegion = part.roiConstraints;
  } else {
    part.fallback = RoiFallback::Grid;
    part.searchRegion = fullSet(n);
  }
  part.constraints = std::move(levels);
  part.thresholds = std::move(thresholds);
  return part;
}

RegionPartition buildRegions(const BoundsTable& bounds, const std::vector<double>& thresholds,
                             double previousLcbFMax) {
  const int k = bounds.numConstraints();
  if (static_cast<int>(thresholds.size()) != k)
    throw std::invalid_argument("buildRegions: one threshold per constraint required");
  std::vector<LevelSets> levels;
  IndexSet joint = fullSet(bounds.objective().size());
  for (int c = 0; c < k; ++c) {
    levels.push_back(partitionConstraint(bounds.constraint(c + 1), thresholds[static_cast<std::size_t>(c)]));
    joint = intersect(joint, levels.back().superlevel);
  }
  const double fresh = objectiveThreshold(bounds.objective(), joint);
  return buildROIs(bounds, std::move(levels), thresholds, std::max(fresh, previousLcbFMax));
}

}  // namespace cobalt
