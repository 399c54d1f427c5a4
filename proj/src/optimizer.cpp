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

#include "cobalt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>

namespace cobalt {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kMinNoiseVariance = 1e-6;

// Stream 0 draws the design (and random-search queries); stream 1 + g draws
// the observation noise of function g.
std::mt19937_64 streamRng(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32), stream,
                    0x636f62u};
  return std::mt19937_64(seq);
}

// Shared state of one trial: surrogates, oracle, regret tracking.
class Session {
 public:
  Session(const TaskDefinition& task, const OptimizerConfig& config, bool withSurrogates)
      : task_(task), config_(config), evaluator_(task, config.seed) {
    record_.algorithm = config.algorithm;
    record_.seed = config.seed;
    record_.numFunctions = task.numFunctions();
    record_.aspectCounts.assign(static_cast<std::size_t>(task.numFunctions()), 0);
    if (!withSurrogates) return;
    const Eigen::VectorXd extent = task.grid->colwise().maxCoeff() - task.grid->colwise().minCoeff();
    for (int g = 0; g < task.numFunctions(); ++g) {
      Kerneld kernel = config.kernels.empty()
                           ? Kerneld(config.kernelFamily,
                                     (extent.array().max(1e-12) * config.initialLengthscaleFraction).matrix(),
                                     config.initialOutputscale)
                           : config.kernels[static_cast<std::size_t>(g)];
      const double noise = std::max(task.noiseStd[static_cast<std::size_t>(g)] *
                                        task.noiseStd[static_cast<std::size_t>(g)],
                                    kMinNoiseVariance);
      gps_.emplace_back(std::move(kernel), task.grid, noise, config.standardize,
                        g == 0 ? "objective" : "constraint_" + std::to_string(g));
    }
  }

  const TaskDefinition& task() const { return task_; }
  std::vector<GpSurrogated>& gps() { return gps_; }
  TrialRecord& record() { return record_; }

  /// Evaluates the functions flagged in `which` at `x` and appends a row.
  IterationRecord& evaluate(int t, Eigen::Index x, std::string aspect, const std::vector<bool>& which) {
    IterationRecord row;
    row.t = t;
    row.x = x;
    row.aspect = std::move(aspect);
    row.observations.assign(static_cast<std::size_t>(task_.numFunctions()), kNaN);
    for (int g = 0; g < task_.numFunctions(); ++g) {
      if (!which[static_cast<std::size_t>(g)]) continue;
      const double y = evaluator_(g, x);
      row.observations[static_cast<std::size_t>(g)] = y;
      if (!gps_.empty()) gps_[static_cast<std::size_t>(g)].observe(x, y);
    }
    row.reward = reward(x, task_);
    best_ = Reward::best(best_, row.reward);
    row.bestReward = best_;
    row.regret = task_.hasFeasiblePoint() ? SimpleRegret::of(task_.optimumValue, best_) : SimpleRegret::sentinel();
    record_.rows.push_back(std::move(row));
    return record_.rows.back();
  }

  std::vector<bool> all() const { return std::vector<bool>(static_cast<std::size_t>(task_.numFunctions()), true); }

  void runInitialDesign() {
    for (Eigen::Index x : initDesign(task_.gridSize(), config_.initDesignSize, config_.seed))
      evaluate(0, x, "init", all());
  }

  void refit() {
    for (auto& gp : gps_) {
      gp.rebuild();
      if (gp.observations().size() < 2) continue;
      Kerneld fitted = fitHyperparameters(gp, config_.search);
      if (fitted.lengthscale() != gp.kernel().lengthscale() || fitted.outputscale() != gp.kernel().outputscale())
        gp.setKernel(std::move(fitted));
    }
    ++record_.diag.refits;
  }

  bool refitDue(int t) const { return config_.refitEvery > 0 && t % config_.refitEvery == 0; }

  TrialRecord finish() {
    for (const auto& gp : gps_) {
      record_.observationCounts.push_back(static_cast<int>(gp.observations().size()));
      record_.finalKernels.push_back(gp.kernel());
    }
    if (gps_.empty()) {
      int count = 0;
      for (const auto& row : record_.rows) count += row.observations.empty() ? 0 : 1;
      record_.observationCounts.assign(static_cast<std::size_t>(task_.numFunctions()), count);
    }
    return std::move(record_);
  }

 private:
  const TaskDefinition& task_;
  const OptimizerConfig& config_;
  Evaluator evaluator_;
  std::vector<GpSurrogated> gps_;
  TrialRecord record_;
  Reward best_ = Reward::infeasible();
};

TrialRecord runCobalt(const TaskDefinition& task, const OptimizerConfig& config, bool decoupled) {
  config.validate();
  Session session(task, config, true);
  auto& gps = session.gps();
  auto& diag = session.record().diag;
  const int numConstraints = task.numConstraints();

  BetaSchedule schedule;
  schedule.delta = config.delta;
  schedule.numConstraints = numConstraints;
  schedule.gridSize = task.gridSize();
  schedule.mode = config.betaMode;
  schedule.constantValue = config.betaConstant;

  try {
    session.runInitialDesign();
    if (config.refitEvery > 0) session.refit();

    std::optional<BoundsTable> previous;
    std::optional<RegionPartition> previousRegions;
    double previousAlpha = kNaN;
    double runningLcbFMax = -std::numeric_limits<double>::infinity();
    BoundsTable table;
    RegionPartition regions;
    double alpha = kNaN;

    for (int t = 1; t <= config.budget; ++t) {
      const double b = beta(schedule, t);
      BoundsTable raw;
      raw.iteration = t;
      for (const auto& gp : gps) raw.functions.push_back(computeBounds(gp.posterior(t - 1), b));
      if (config.monotoneBounds && previous) {
        table = enforceMonotone(*previous, std::move(raw));
        diag.crossings += table.crossings;
      } else {
        table = std::move(raw);
      }

      regions = buildRegions(table, task.thresholds, runningLcbFMax);
      runningLcbFMax = regions.lcbFMax;
      if (regions.fallback != RoiFallback::None) ++diag.emptyRoi;

      AcquisitionDiagnostics acqDiag;
      std::vector<AspectProposal> proposals;
      IndexSet objectiveDomain =
          config.objectiveDomain == ObjectiveDomain::RoiObjective ? regions.roiObjective : regions.searchRegion;
      if (objectiveDomain.empty()) {
        ++diag.emptyObjectiveDomain;
        objectiveDomain = fullSet(task.gridSize());
      }
      proposals.push_back(acqObjective(table.objective(), objectiveDomain, regions.lcbFMax,
                                       gps[0].standardizer().scale, &acqDiag));
      for (int k = 1; k <= numConstraints; ++k) {
        auto p = acqConstraint(table.constraint(k), regions.constraints[static_cast<std::size_t>(k - 1)].undecided, k,
                               gps[static_cast<std::size_t>(k)].standardizer().scale, &acqDiag);
        if (p) proposals.push_back(*p);
      }
      diag.negativeClamps += acqDiag.negativeClamps;
      const AspectProposal chosen = selectAspect(proposals);
      alpha = chosen.value;

      if (previous && previousRegions) {
        if (alpha > previousAlpha) {
          ++diag.alphaIncreases;
          if (!previousRegions->hasObjectiveThreshold() && regions.hasObjectiveThreshold())
            ++diag.alphaIncreasesAtThresholdOnset;
          diag.maxAlphaIncrease = std::max(diag.maxAlphaIncrease, alpha - previousAlpha);
        }
        if (!isSubset(regions.roiCombined, previousRegions->roiCombined)) ++diag.roiGrowths;
        for (int k = 0; k < numConstraints; ++k)
          if (!isSubset(regions.constraints[static_cast<std::size_t>(k)].undecided,
                        previousRegions->constraints[static_cast<std::size_t>(k)].undecided))
            ++diag.undecidedGrowths;
      }

      std::vector<bool> which = session.all();
      if (decoupled) {
        std::fill(which.begin(), which.end(), false);
        which[static_cast<std::size_t>(chosen.aspect.index)] = true;
      }
      ++session.record().aspectCounts[static_cast<std::size_t>(chosen.aspect.index)];
      IterationRecord& row = session.evaluate(t, chosen.candidate, chosen.aspect.label(), which);
      row.alpha = alpha;
      row.beta = b;
      row.roiSize = regions.roiCombined.size();
      for (const auto& level : regions.constraints) row.undecidedSizes.push_back(level.undecided.size());
      row.optimumInRoi = task.hasFeasiblePoint() && contains(regions.roiCombined, task.optimumIndex);

      previous = table;
      previousRegions = regions;
      previousAlpha = alpha;
      if (session.refitDue(t) && t < config.budget) {
        session.refit();
        if (config.resetBoundsOnRefit) {
          previous.reset();
          previousRegions.reset();
          runningLcbFMax = -std::numeric_limits<double>::infinity();
          ++diag.boundResets;
        }
      }
    }

    if (config.budget > 0 && !regions.roiCombined.empty()) {
      double maxUcb = -std::numeric_limits<double>::infinity();
      double maxLcb = -std::numeric_limits<double>::infinity();
      for (Eigen::Index i : regions.roiCombined) {
        maxUcb = std::max(maxUcb, table.objective().ucb(i));
        maxLcb = std::max(maxLcb, table.objective().lcb(i));
      }
      diag.finalCiWidth = (maxUcb - maxLcb) / gps[0].standardizer().scale;
      diag.finalAlpha = alpha;
      diag.finalCiWithinAlpha = diag.finalCiWidth <= alpha;
    }
  } catch (const NumericalDegeneracy& e) {
    session.record().error = e.what();
  }
  return session.finish();
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::CobaltCoupled: return "cobalt-coupled";
    case Algorithm::CobaltDecoupled: return "cobalt-decoupled";
    case Algorithm::Cei: return "cei";
    case Algorithm::Random: return "random";
  }
  return "unknown";
}

Algorithm algorithmFromString(const std::string& name) {
  if (name == "cobalt-coupled" || name == "cobalt") return Algorithm::CobaltCoupled;
  if (name == "cobalt-decoupled") return Algorithm::CobaltDecoupled;
  if (name == "cei") return Algorithm::Cei;
  if (name == "random") return Algorithm::Random;
  throw std::invalid_argument("unknown algorithm: " + name);
}

std::string to_string(ObjectiveDomain d) { return d == ObjectiveDomain::RoiObjective ? "roi_f" : "roi_combined"; }

ObjectiveDomain objectiveDomainFromString(const std::string& name) {
  if (name == "roi_f") return ObjectiveDomain::RoiObjective;
  if (name == "roi_combined") return ObjectiveDomain::RoiCombined;
  throw std::invalid_argument("unknown objective domain: " + name);
}

void OptimizerConfig::validate() const {
  if (budget < 1) throw std::invalid_argument("budget must be >= 1");
  if (initDesignSize < 1) throw std::invalid_argument("initial design size must be >= 1");
  if (refitEvery < 0) throw std::invalid_argument("refit interval must be >= 0");
}

std::vector<const IterationRecord*> TrialRecord::iterations() const {
  std::vector<const IterationRecord*> out;
  for (const auto& row : rows)
    if (row.t >= 1) out.push_back(&row);
  return out;
}

SimpleRegret TrialRecord::finalRegret() const {
  return rows.empty() ? SimpleRegret::sentinel() : rows.back().regret;
}

std::vector<Eigen::Index> initDesign(Eigen::Index gridSize, int size, std::uint64_t seed) {
  if (size < 0 || size > gridSize) throw std::invalid_argument("initial design larger than the grid");
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(gridSize));
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  auto rng = streamRng(seed, 0);
  for (int i = 0; i < size; ++i) {
    std::uniform_int_distribution<Eigen::Index> pick(i, gridSize - 1);
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(pick(rng))]);
  }
  perm.resize(static_cast<std::size_t>(size));
  return perm;
}

Evaluator::Evaluator(const TaskDefinition& task, std::uint64_t seed) : task_(task) {
  for (int g = 0; g < task.numFunctions(); ++g) {
    streams_.push_back(streamRng(seed, 1u + static_cast<std::uint32_t>(g)));
    normals_.emplace_back(0.0, 1.0);
  }
}

double Evaluator::operator()(int function, Eigen::Index index) {
  const auto g = static_cast<std::size_t>(function);
  return task_.values[g](index) + task_.noiseStd[g] * normals_[g](streams_[g]);
}

TrialRecord runCoupled(const TaskDefinition& task, OptimizerConfig config) {
  config.algorithm = Algorithm::CobaltCoupled;
  return runCobalt(task, config, false);
}

TrialRecord runDecoupled(const TaskDefinition& task, OptimizerConfig config) {
  config.algorithm = Algorithm::CobaltDecoupled;
  return runCobalt(task, config, true);
}

TrialRecord runCei(const TaskDefinition& task, OptimizerConfig config) {
  config.algorithm = Algorithm::Cei;
  config.validate();
  Session session(task, config, true);
  auto& gps = session.gps();
  const int numConstraints = task.numConstraints();
  try {
    session.runInitialDesign();
    if (config.refitEvery > 0) session.refit();
    for (int t = 1; t <= config.budget; ++t) {
      std::optional<double> best;
      for (const auto& row : session.record().rows) {
        bool feasible = true;
        for (int k = 1; k <= numConstraints; ++k)
          feasible = feasible && row.observations[static_cast<std::size_t>(k)] >
                                     task.thresholds[static_cast<std::size_t>(k - 1)];
        if (feasible && (!best || row.observations[0] > *best)) best = row.observations[0];
      }
      const PosteriorTabled objective = gps[0].posterior(t - 1);
      std::vector<PosteriorTabled> constraints;
      for (int k = 1; k <= numConstraints; ++k) constraints.push_back(gps[static_cast<std::size_t>(k)].posterior(t - 1));
      const CeiChoice choice = cEI(objective, constraints, task.thresholds, best);
      ++session.record().aspectCounts[0];
      IterationRecord& row = session.evaluate(t, choice.index, "cei", session.all());
      row.alpha = choice.value;
      row.optimumInRoi = false;
      if (session.refitDue(t) && t < config.budget) session.refit();
    }
  } catch (const NumericalDegeneracy& e) {
    session.record().error = e.what();
  }
  return session.finish();
}

TrialRecord runRandom(const TaskDefinition& task, OptimizerConfig config) {
  config.algorithm = Algorithm::Random;
  config.validate();
  Session session(task, config, false);
  session.runInitialDesign();
  auto rng = streamRng(config.seed, 0xfffu);
  std::uniform_int_distribution<Eigen::Index> pick(0, task.gridSize() - 1);
  for (int t = 1; t <= config.budget; ++t) {
    ++session.record().aspectCounts[0];
    session.evaluate(t, pick(rng), "random", session.all());
  }
  return session.finish();
}

TrialRecord runTrial(const TaskDefinition& task, const OptimizerConfig& config) {
  switch (config.algorithm) {
    case Algorithm::CobaltCoupled: return runCoupled(task, config);
    case Algorithm::CobaltDecoupled: return runDecoupled(task, config);
    case Algorithm::Cei: return runCei(task, config);
    case Algorithm::Random: return runRandom(task, config);
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace cobalt
