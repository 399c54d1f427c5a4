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

// Multi-trial experiments: configuration, parallel execution, and the
// manifest.json / regret.csv / summary.json artifacts.

#ifndef COBALT_HARNESS_HPP
#define COBALT_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "cobalt/optimizer.hpp"
#include "cobalt/tasks.hpp"

namespace cobalt {

#ifndef COBALT_VERSION
#define COBALT_VERSION "0.1.0"
#endif

/// Literal written for the infeasible reward and the infinite regret.
inline constexpr const char* kInfRegret = "inf_regret";

struct ExperimentConfig {
  std::string task = "rastrigin-1d-1c@60";
  Algorithm algorithm = Algorithm::CobaltCoupled;
  int trials = 15;
  int budget = 2000;
  std::uint64_t seed = 0;            // trial i uses seed + i unless `seeds` is given
  std::vector<std::uint64_t> seeds;  // explicit per-trial seeds
  double delta = 0.1;
  BetaMode betaMode = BetaMode::Scheduled;
  double betaConstant = 4.0;
  int initDesignSize = 10;
  int refitEvery = 10;
  bool standardize = true;
  bool monotoneBounds = true;
  bool resetBoundsOnRefit = true;
  ObjectiveDomain objectiveDomain = ObjectiveDomain::RoiObjective;
  KernelFamily kernel = KernelFamily::Matern52;
  std::string outputDir = "results";
  int parallelism = 1;

  void validate() const;
  std::vector<std::uint64_t> trialSeeds() const;
  OptimizerConfig optimizerConfig(std::uint64_t trialSeed) const;
};

nlohmann::json toJson(const ExperimentConfig& config);
/// Fields absent from `j` keep the values already in `config`.
void mergeJson(ExperimentConfig& config, const nlohmann::json& j);

struct ExperimentResult {
  TaskDefinition task;
  std::vector<TrialRecord> trials;
  nlohmann::json summary;
};

/// Full-precision text for a double (17 significant digits).
std::string formatDouble(double v);

std::string regretCsv(const TrialRecord& trial, const TaskDefinition& task);
nlohmann::json summarize(const std::vector<TrialRecord>& trials, const TaskDefinition& task, int budget);

/// Runs every trial (in parallel when configured) and writes
/// <out>/manifest.json, <out>/trials/seed_<s>/regret.csv and <out>/summary.json.
ExperimentResult runExperiment(const ExperimentConfig& config, bool writeFiles = true);

}  // namespace cobalt

#endif  // COBALT_HARNESS_HPP
