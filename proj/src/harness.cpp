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

#include "cobalt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cobalt {
namespace {

using nlohmann::json;

std::string betaModeName(BetaMode m) { return m == BetaMode::Scheduled ? "scheduled" : "constant"; }

BetaMode betaModeFromString(const std::string& s) {
  if (s == "scheduled") return BetaMode::Scheduled;
  if (s == "constant") return BetaMode::Constant;
  throw std::invalid_argument("unknown beta mode: " + s);
}

json regretJson(const SimpleRegret& r) { return r.isFinite() ? json(r.value()) : json(kInfRegret); }

std::string rewardText(const Reward& r) { return r.isFeasible() ? formatDouble(r.value()) : kInfRegret; }

std::string regretText(const SimpleRegret& r) { return r.isFinite() ? formatDouble(r.value()) : kInfRegret; }

void writeFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (budget < 1) throw std::invalid_argument("budget must be >= 1");
  if (initDesignSize < 1) throw std::invalid_argument("init design size must be >= 1");
  if (parallelism < 1) throw std::invalid_argument("parallelism must be >= 1");
  if (!seeds.empty() && static_cast<int>(seeds.size()) != trials)
    throw std::invalid_argument("explicit seeds must match the trial count");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
}

std::vector<std::uint64_t> ExperimentConfig::trialSeeds() const {
  if (!seeds.empty()) return seeds;
  std::vector<std::uint64_t> out;
  for (int i = 0; i < trials; ++i) out.push_back(seed + static_cast<std::uint64_t>(i));
  return out;
}

OptimizerConfig ExperimentConfig::optimizerConfig(std::uint64_t trialSeed) const {
  OptimizerConfig c;
  c.algorithm = algorithm;
  c.budget = budget;
  c.initDesignSize = initDesignSize;
  c.seed = trialSeed;
  c.delta = delta;
  c.betaMode = betaMode;
  c.betaConstant = betaConstant;
  c.refitEvery = refitEvery;
  c.standardize = standardize;
  c.monotoneBounds = monotoneBounds;
  c.resetBoundsOnRefit = resetBoundsOnRefit;
  c.objectiveDomain = objectiveDomain;
  c.kernelFamily = kernel;
  return c;
}

json toJson(const ExperimentConfig& c) {
  return json{{"task", c.task},
              {"algorithm", to_string(c.algorithm)},
              {"trials", c.trials},
              {"budget", c.budget},
              {"seed", c.seed},
              {"seeds", c.seeds},
              {"delta", c.delta},
              {"beta_mode", betaModeName(c.betaMode)},
              {"beta_constant", c.betaConstant},
              {"init_design_size", c.initDesignSize},
              {"refit_every", c.refitEvery},
              {"standardize", c.standardize},
              {"monotone_bounds", c.monotoneBounds},
              {"reset_bounds_on_refit", c.resetBoundsOnRefit},
              {"objective_domain", to_string(c.objectiveDomain)},
              {"kernel", to_string(c.kernel)},
              {"output_dir", c.outputDir},
              {"parallelism", c.parallelism}};
}

void mergeJson(ExperimentConfig& c, const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "task") c.task = value.get<std::string>();
    else if (key == "algorithm") c.algorithm = algorithmFromString(value.get<std::string>());
    else if (key == "trials") c.trials = value.get<int>();
    else if (key == "budget") c.budget = value.get<int>();
    else if (key == "seed") c.seed = value.get<std::uint64_t>();
    else if (key == "seeds") c.seeds = value.get<std::vector<std::uint64_t>>();
    else if (key == "delta") c.delta = value.get<double>();
    else if (key == "beta_mode") c.betaMode = betaModeFromString(value.get<std::string>());
    else if (key == "beta_constant") c.betaConstant = value.get<double>();
    else if (key == "init_design_size") c.initDesignSize = value.get<int>();
    else if (key == "refit_every") c.refitEvery = value.get<int>();
    else if (key == "standardize") c.standardize = value.get<bool>();
    else if (key == "monotone_bounds") c.monotoneBounds = value.get<bool>();
    else if (key == "reset_bounds_on_refit") c.resetBoundsOnRefit = value.get<bool>();
    else if (key == "objective_domain") c.objectiveDomain = objectiveDomainFromString(value.get<std::string>());
    else if (key == "kernel") c.kernel = kernelFamilyFromString(value.get<std::string>());
    else if (key == "output_dir") c.outputDir = value.get<std::string>();
    else if (key == "parallelism") c.parallelism = value.get<int>();
    else throw std::invalid_argument("unknown config key: " + key);
  }
}

std::string formatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string regretCsv(const TrialRecord& trial, const TaskDefinition& task) {
  std::ostringstream out;
  out << "t,x_index,aspect,reward,best_reward,simple_regret,alpha_t,roi_size";
  for (int k = 1; k <= task.numConstraints(); ++k) out << ",u_size_" << k;
  out << ",simple_regret_normalized\n";
  const double range = task.optimumValue - task.objectiveMin;
  for (const auto& row : trial.rows) {
    out << row.t << ',' << row.x << ',' << row.aspect << ',' << rewardText(row.reward) << ','
        << rewardText(row.bestReward) << ',' << regretText(row.regret) << ',' << formatDouble(row.alpha) << ','
        << row.roiSize;
    for (int k = 0; k < task.numConstraints(); ++k) {
      out << ',';
      if (static_cast<std::size_t>(k) < row.undecidedSizes.size()) out << row.undecidedSizes[static_cast<std::size_t>(k)];
    }
    out << ',';
    if (row.regret.isFinite())
      out << formatDouble(range > 0.0 ? row.regret.value() / range : 0.0);
    else
      out << kInfRegret;
    out << '\n';
  }
  return out.str();
}

json summarize(const std::vector<TrialRecord>& trials, const TaskDefinition& task, int budget) {
  const double range = task.optimumValue - task.objectiveMin;
  json perT = json::array();
  for (int t = 1; t <= budget; ++t) {
    std::vector<double> values;
    bool sentinel = false;
    int present = 0;
    for (const auto& trial : trials) {
      for (const auto& row : trial.rows) {
        if (row.t != t) continue;
        ++present;
        if (row.regret.isFinite())
          values.push_back(row.regret.value());
        else
          sentinel = true;
      }
    }
    json entry{{"t", t}, {"trials", present}};
    if (sentinel || values.empty()) {
      entry["mean_regret"] = kInfRegret;
      entry["ci95_half_width"] = nullptr;
      entry["mean_regret_normalized"] = kInfRegret;
    } else {
      double mean = 0.0;
      for (double v : values) mean += v;
      mean /= static_cast<double>(values.size());
      double var = 0.0;
      for (double v : values) var += (v - mean) * (v - mean);
      const double n = static_cast<double>(values.size());
      const double half = values.size() > 1 ? 1.959963984540054 * std::sqrt(var / (n - 1.0) / n) : 0.0;
      entry["mean_regret"] = mean;
      entry["ci95_half_width"] = half;
      entry["mean_regret_normalized"] = range > 0.0 ? mean / range : 0.0;
    }
    perT.push_back(std::move(entry));
  }

  std::vector<double> finals;  // +inf stands for the sentinel while sorting
  json perTrial = json::array();
  int atZero = 0;
  int decoupledAccountingErrors = 0;
  for (const auto& trial : trials) {
    const SimpleRegret r = trial.finalRegret();
    finals.push_back(r.isFinite() ? r.value() : std::numeric_limits<double>::infinity());
    if (r.isFinite() && r.value() == 0.0) ++atZero;
    int sum = 0;
    for (int c : trial.aspectCounts) sum += c;
    const int iterations = static_cast<int>(trial.iterations().size());
    if (sum != iterations) ++decoupledAccountingErrors;
    perTrial.push_back(json{{"seed", trial.seed},
                            {"final_regret", regretJson(r)},
                            {"iterations", iterations},
                            {"aspect_counts", trial.aspectCounts},
                            {"observation_counts", trial.observationCounts},
                            {"crossings", trial.diag.crossings},
                            {"empty_roi", trial.diag.emptyRoi},
                            {"refits", trial.diag.refits},
                            {"error", trial.error}});
  }
  std::sort(finals.begin(), finals.end());
  json median = kInfRegret;
  if (!finals.empty()) {
    const std::size_t n = finals.size();
    const double m = n % 2 == 1 ? finals[n / 2] : 0.5 * (finals[n / 2 - 1] + finals[n / 2]);
    if (std::isfinite(m)) median = m;
  }
  return json{{"task", task.name},
              {"optimum_index", task.optimumIndex},
              {"optimum_value", task.optimumValue},
              {"feasible_fraction", task.feasibleFraction},
              {"trials", trials.size()},
              {"median_final_regret", median},
              {"trials_at_zero_regret", atZero},
              {"aspect_count_mismatches", decoupledAccountingErrors},
              {"per_t", perT},
              {"per_trial", perTrial}};
}

ExperimentResult runExperiment(const ExperimentConfig& config, bool writeFiles) {
  config.validate();
  ExperimentResult result;
  result.task = makeTask(config.task);
  const auto seeds = config.trialSeeds();
  result.trials.resize(seeds.size());

  const std::filesystem::path out(config.outputDir);
  if (writeFiles) {
    std::filesystem::create_directories(out / "trials");
    json manifest{{"config", toJson(config)},
                  {"code_version", COBALT_VERSION},
                  {"task_info",
                   {{"name", result.task.name},
                    {"grid_size", result.task.gridSize()},
                    {"dimension", result.task.dim()},
                    {"constraints", result.task.numConstraints()},
                    {"thresholds", result.task.thresholds},
                    {"noise_std", result.task.noiseStd},
                    {"feasible_fraction", result.task.feasibleFraction},
                    {"optimum_index", result.task.optimumIndex},
                    {"optimum_value", result.task.optimumValue}}},
                  {"trial_seeds", seeds}};
    writeFile(out / "manifest.json", manifest.dump(2) + "\n");
  }

  std::atomic<std::size_t> next{0};
  std::mutex errorMutex;
  std::string firstError;
  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      try {
        result.trials[i] = runTrial(result.task, config.optimizerConfig(seeds[i]));
        if (writeFiles) {
          const auto dir = out / "trials" / ("seed_" + std::to_string(seeds[i]));
          std::filesystem::create_directories(dir);
          writeFile(dir / "regret.csv", regretCsv(result.trials[i], result.task));
        }
      } catch (const std::exception& e) {
        std::lock_guard lock(errorMutex);
        if (firstError.empty()) firstError = e.what();
      }
    }
  };
  const int workers = std::min<int>(config.parallelism, static_cast<int>(seeds.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (!firstError.empty()) throw std::runtime_error(firstError);

  result.summary = summarize(result.trials, result.task, config.budget);
  result.summary["config"] = toJson(config);
  if (writeFiles) writeFile(out / "summary.json", result.summary.dump(2) + "\n");
  return result;
}

}  // namespace cobalt
