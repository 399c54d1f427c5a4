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

#include "cobalt/validation.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cobalt/info_gain.hpp"

namespace cobalt {

TaskDefinition sampleProblem(const SampledProblemSpec& spec, std::uint64_t seed) {
  if (spec.gridSize < 2) throw std::invalid_argument("sampled problem needs at least two grid points");
  const Eigen::MatrixXd grid = Eigen::VectorXd::LinSpaced(spec.gridSize, 0.0, 1.0);
  const Kerneld kernel = spec.kernel();
  constexpr int kMaxAttempts = 10000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    TaskDefinition task;
    task.name = "sampled";
    task.grid = std::make_shared<const Eigen::MatrixXd>(grid);
    for (int g = 0; g <= spec.numConstraints; ++g) {
      const std::uint64_t drawSeed = seed * 1000003ull + static_cast<std::uint64_t>(attempt) * 131ull +
                                     static_cast<std::uint64_t>(g);
      task.values.push_back(samplePrior(kernel, grid, drawSeed));
    }
    task.thresholds.assign(static_cast<std::size_t>(spec.numConstraints), spec.threshold);
    task.noiseStd.assign(static_cast<std::size_t>(spec.numConstraints + 1), spec.noiseStd);
    task.feasibilityMargin = 0.0;
    task.finalize();
    if (!task.hasFeasiblePoint()) continue;
    bool clears = true;
    for (int k = 1; k <= spec.numConstraints; ++k)
      clears = clears && task.values[static_cast<std::size_t>(k)](task.optimumIndex) - spec.threshold > spec.margin;
    if (!clears) continue;
    task.feasibilityMargin = spec.margin;
    task.finalize();
    task.name = "sampled-" + std::to_string(seed);
    return task;
  }
  throw std::runtime_error("sampleProblem: no acceptable draw");
}

OptimizerConfig theoryConfig(const SampledProblemSpec& spec, int budget, double delta, BetaMode mode,
                             std::uint64_t seed) {
  OptimizerConfig config;
  config.budget = budget;
  config.initDesignSize = 1;
  config.seed = seed;
  config.delta = delta;
  config.betaMode = mode;
  config.refitEvery = 0;
  config.standardize = false;
  config.monotoneBounds = true;
  config.kernels.assign(static_cast<std::size_t>(spec.numConstraints + 1), spec.kernel());
  if (mode == BetaMode::Constant) {
    BetaSchedule schedule;
    schedule.delta = delta;
    schedule.numConstraints = spec.numConstraints;
    schedule.gridSize = spec.gridSize;
    config.betaConstant = beta(schedule, budget);
  }
  return config;
}

double c1Constant(double sigma2) { return 8.0 / std::log1p(1.0 / sigma2); }

double binomialSlack(double p, int n) { return 1.959963984540054 * std::sqrt(p * (1.0 - p) / n); }

std::string ChainCheck::failures() const {
  std::ostringstream out;
  if (!alphaNonIncreasing)
    out << "alpha_t increased " << alphaIncreases << " time(s) (" << alphaIncreasesAtThresholdOnset
        << " when the objective threshold first became finite), max step " << maxAlphaIncrease << "; ";
  if (!ciWithinAlpha) out << "|CI_f*| = " << ciWidth << " exceeds alpha_T = " << alphaT << "; ";
  if (!roiNested) out << "combined ROI grew; ";
  if (!undecidedNested) out << "an undecided set grew; ";
  return out.str();
}

ChainCheck validateTheorem1(const TrialRecord& trial, const TaskDefinition& task, const SampledProblemSpec& spec,
                            double betaT) {
  ChainCheck check;
  const auto& d = trial.diag;
  check.alphaIncreases = d.alphaIncreases;
  check.alphaIncreasesAtThresholdOnset = d.alphaIncreasesAtThresholdOnset;
  check.maxAlphaIncrease = d.maxAlphaIncrease;
  check.alphaNonIncreasing = d.alphaIncreases == 0;
  check.ciWithinAlpha = d.finalCiWithinAlpha;
  check.roiNested = d.roiGrowths == 0;
  check.undecidedNested = d.undecidedGrowths == 0;
  check.alphaT = d.finalAlpha;
  check.ciWidth = d.finalCiWidth;
  check.betaT = betaT;

  const double sigma2 = spec.noiseStd * spec.noiseStd;
  check.c1 = c1Constant(sigma2);
  const int T = static_cast<int>(trial.iterations().size());
  const Kerneld kernel = spec.kernel();
  const bool decoupled = trial.algorithm == Algorithm::CobaltDecoupled;
  const auto curve = greedyInfoGainCurve(kernel, *task.grid, std::min<int>(T, static_cast<int>(task.gridSize())), sigma2);
  auto gammaAt = [&](int count) {
    if (count <= 0) return 0.0;
    return curve[static_cast<std::size_t>(std::min<int>(count, static_cast<int>(curve.size())) - 1)];
  };
  for (int g = 0; g < task.numFunctions(); ++g)
    check.gammaHat += gammaAt(decoupled ? trial.aspectCounts[static_cast<std::size_t>(g)] : T);
  check.rateBound = std::sqrt(check.c1 * betaT * check.gammaHat / T);
  check.boundRatio = check.alphaT / check.rateBound;
  check.budgetBound = betaT * check.gammaHat * check.c1 / (spec.margin * spec.margin);
  return check;
}

TheoryReport validateLemma1(const SampledProblemSpec& spec, int trials, int budget, double delta,
                            std::uint64_t baseSeed) {
  TheoryReport report;
  report.trials = trials;
  report.c1 = c1Constant(spec.noiseStd * spec.noiseStd);
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t seed = baseSeed + static_cast<std::uint64_t>(i);
    const TaskDefinition task = sampleProblem(spec, seed);
    const TrialRecord trial = runCoupled(task, theoryConfig(spec, budget, delta, BetaMode::Scheduled, seed));
    bool covered = trial.error.empty();
    for (const auto* row : trial.iterations()) covered = covered && row->optimumInRoi;
    report.covered += covered ? 1 : 0;
    report.crossings += trial.diag.crossings;
    report.emptyRoi += trial.diag.emptyRoi;
  }
  report.coverageRate = trials > 0 ? static_cast<double>(report.covered) / trials : 0.0;
  report.coverageThreshold = 1.0 - delta - binomialSlack(1.0 - delta, trials);
  return report;
}

TheoryReport validateTheoremChain(const SampledProblemSpec& spec, int trials, int budget, double delta,
                                  bool decoupled, std::uint64_t baseSeed) {
  TheoryReport report;
  report.trials = trials;
  report.c1 = c1Constant(spec.noiseStd * spec.noiseStd);
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t seed = baseSeed + static_cast<std::uint64_t>(i);
    const TaskDefinition task = sampleProblem(spec, seed);
    const OptimizerConfig config = theoryConfig(spec, budget, delta, BetaMode::Constant, seed);
    const TrialRecord trial = decoupled ? runDecoupled(task, config) : runCoupled(task, config);
    ++report.chainRuns;
    report.crossings += trial.diag.crossings;
    report.emptyRoi += trial.diag.emptyRoi;
    if (!trial.error.empty()) {
      ++report.chainFailures;
      report.failureMessages.push_back("seed " + std::to_string(seed) + ": " + trial.error);
      continue;
    }
    ChainCheck check = validateTheorem1(trial, task, spec, config.betaConstant);
    if (!check.passed()) {
      ++report.chainFailures;
      report.failureMessages.push_back("seed " + std::to_string(seed) + ": " + check.failures());
    }
    report.chains.push_back(std::move(check));
  }
  return report;
}

}  // namespace cobalt
