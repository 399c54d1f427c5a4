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

// Level-set partitions per constraint and the regions of interest built from
// them. All sets are sorted vectors of grid indices.

#ifndef COBALT_REGIONS_HPP
#define COBALT_REGIONS_HPP

#include <Eigen/Dense>

#include <limits>
#include <vector>

#include "cobalt/bounds.hpp"

namespace cobalt {

using IndexSet = std::vector<Eigen::Index>;

IndexSet intersect(const IndexSet& a, const IndexSet& b);
bool isSubset(const IndexSet& sub, const IndexSet& super);
bool contains(const IndexSet& set, Eigen::Index i);
IndexSet fullSet(Eigen::Index n);

struct LevelSets {
  IndexSet superlevel;  // lcb > h
  IndexSet sublevel;    // ucb < h
  IndexSet undecided;   // ucb >= h and lcb <= h
};

/// Which set the optimizer actually searched after an empty ROI.
enum class RoiFallback { None, Constraints, Grid };

struct RegionPartition {
  std::vector<LevelSets> constraints;
  std::vector<double> thresholds;
  IndexSet jointSuperlevel;
  IndexSet roiConstraints;
  IndexSet roiObjective;
  IndexSet roiCombined;
  double lcbFMax = -std::numeric_limits<double>::infinity();
  RoiFallback fallback = RoiFallback::None;
  IndexSet searchRegion;  // roiCombined, or its fallback when empty

  bool hasObjectiveThreshold() const { return lcbFMax > -std::numeric_limits<double>::infinity(); }
};

LevelSets partitionConstraint(const FunctionBounds& bounds, double threshold);

/// max of lcb_f over `jointSuperlevel`, or -inf when the set is empty.
double objectiveThreshold(const FunctionBounds& objective, const IndexSet& jointSuperlevel);

/// Builds every region from bounds already partitioned into `levels`.
RegionPartition buildROIs(const BoundsTable& bounds, std::vector<LevelSets> levels,
                          std::vector<double> thresholds, double lcbFMax);

/// Partition, threshold and ROIs in one step. `previousLcbFMax` is the
/// running maximum carried from the last iteration (-inf to start fresh).
RegionPartition buildRegions(const BoundsTable& bounds, const std::vector<double>& thresholds,
                             double previousLcbFMax = -std::numeric_limits<double>::infinity());

}  // namespace cobalt

#endif  // COBALT_REGIONS_HPP
