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

// The optimization loops: coupled and decoupled COBALT, plus the constrained
// EI and uniform-random baselines that share its evaluation plumbing.

#ifndef COBALT_OPTIMIZER_HPP
#define COBALT_OPTIMIZER_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cobalt/acquisition.hpp"
#include "cobalt/bounds.hpp"
#include "cobalt/gp.hpp"
#include "cobalt/regions.hpp"
#include "cobalt/tasks.hpp"

namespace cobalt {

enum class Algorithm { CobaltCoupled, CobaltDecoupled, Cei, Random };
enum class ObjectiveDomain { RoiObjective, RoiCombined };

std::string to_string(Algorithm a);
Algorithm algorithmFromString(const std::string& name);
std::string to_string(ObjectiveDomain d);
ObjectiveDomain objectiveDomainFromString(const std::string& name);

struct OptimizerConfig {
  Algorithm algorithm = Algorithm::CobaltCoupled;
  int budget = 100;
  int initDesignSize = 10;
  std::uint64_t seed = 0;

  double delta = 0.1;
  BetaMode betaMode = BetaMode::Scheduled;
  double betaConstant = 4.0;

  int refitEvery = 10;  // 0 keeps the initial kernels for the whole run
  bool standardize = true;
  bool monotoneBounds = true;
  bool resetBoundsOnRefit = true;  // restart the interval intersection after a kernel change
  ObjectiveDomain objectiveDomain = ObjectiveDomain::RoiObjective;

  KernelFamily kernelFamily = KernelFamily::Matern52;
  double initialLengthscaleFraction = 0.2;  // of the grid extent per dimension
  double initialOutputscale = 1.0;
  HyperparameterSearch search;
  std::vector<Kerneld> kernels;  // explicit initial kernels, one per function; overrides the two fields above

  void validate() const;
};

struct IterationRecord {
  int t = 0;  // 0 marks the initial design
  Eigen::Index x = -1;
  std::string aspect;  // init | objective | constraint_k | cei | random
  std::vector<double> observations;  // NaN where a function was not evaluated
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double beta = std::numeric_limits<double>::quiet_NaN();
  std::size_t roiSize = 0;
  std::vector<std::size_t> undecidedSizes;
  Reward reward = Reward::infeasible();
  Reward bestReward = Reward::infeasible();
  SimpleRegret regret = SimpleRegret::sentinel();
  bool optimumInRoi = false;
};

struct TrialDiagnostics {
  std::size_t crossings = 0;
  std::size_t emptyRoi = 0;
  std::size_t emptyObjectiveDomain = 0;
  std::size_t negativeClamps = 0;
  std::size_t refits = 0;
  std::size_t boundResets = 0;
  // Violations of the nested-interval consequences, counted only between
  // consecutive iterations that share one intersection history.
  std::size_t alphaIncreases = 0;
  std::size_t alphaIncreasesAtThresholdOnset = 0;  // the objective threshold went from unset to finite
  double maxAlphaIncrease = 0.0;
  std::size_t roiGrowths = 0;
  std::size_t undecidedGrowths = 0;
  // Width of [max lcb_f, max ucb_f] over the final combined ROI, in the same
  // units as alpha. NaN when the final ROI is empty.
  double finalCiWidth = std::numeric_limits<double>::quiet_NaN();
  double finalAlpha = std::numeric_limits<double>::quiet_NaN();
  bool finalCiWithinAlpha = true;
};

struct TrialRecord {
  Algorithm algorithm = Algorithm::CobaltCoupled;
  std::uint64_t seed = 0;
  int numFunctions = 1;
  std::vector<IterationRecord> rows;  // initial design rows first, then t = 1..T
  std::vector<int> aspectCounts;      // per function: optimization iterations that queried it
  std::vector<int> observationCounts; // per function: observations held by its surrogate
  std::vector<Kerneld> finalKernels;
  TrialDiagnostics diag;
  std::string error;  // set when a numerical failure aborted the run

  /// Rows with t >= 1.
  std::vector<const IterationRecord*> iterations() const;
  SimpleRegret finalRegret() const;
};

/// Distinct grid indices drawn uniformly without replacement.
std::vector<Eigen::Index> initDesign(Eigen::Index gridSize, int size, std::uint64_t seed);

/// Noisy oracle access with one independent noise stream per function.
class Evaluator {
 public:
  Evaluator(const TaskDefinition& task, std::uint64_t seed);
  double operator()(int function, Eigen::Index index);

 private:
  const TaskDefinition& task_;
  std::vector<std::mt19937_64> streams_;
  std::vector<std::normal_distribution<double>> normals_;  // one per stream: the distribution caches draws
};

TrialRecord runCoupled(const TaskDefinition& task, OptimizerConfig config);
TrialRecord runDecoupled(const TaskDefinition& task, OptimizerConfig config);
TrialRecord runCei(const TaskDefinition& task, OptimizerConfig config);
TrialRecord runRandom(const TaskDefinition& task, OptimizerConfig config);

/// Dispatches on config.algorithm.
TrialRecord runTrial(const TaskDefinition& task, const OptimizerConfig& config);

}  // namespace cobalt

#endif  // COBALT_OPTIMIZER_HPP
