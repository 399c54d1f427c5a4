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

// Command-line front end: run experiments, validate the theory, list tasks,
// and report information gain.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cobalt/harness.hpp"
#include "cobalt/info_gain.hpp"
#include "cobalt/tasks.hpp"
#include "cobalt/validation.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;

struct RunFlags {
  std::string configFile;
  std::optional<std::string> task, algorithm, betaMode, objectiveDomain, kernel, out;
  std::optional<int> trials, budget, initDesign, refitEvery, parallelism;
  std::optional<std::uint64_t> seed;
  std::optional<double> delta, betaConstant;
  std::optional<bool> standardize, monotone, resetOnRefit;
};

json flagOverrides(const RunFlags& f) {
  json j = json::object();
  if (f.task) j["task"] = *f.task;
  if (f.algorithm) j["algorithm"] = *f.algorithm;
  if (f.trials) j["trials"] = *f.trials;
  if (f.budget) j["budget"] = *f.budget;
  if (f.seed) j["seed"] = *f.seed;
  if (f.delta) j["delta"] = *f.delta;
  if (f.betaMode) j["beta_mode"] = *f.betaMode;
  if (f.betaConstant) j["beta_constant"] = *f.betaConstant;
  if (f.initDesign) j["init_design_size"] = *f.initDesign;
  if (f.refitEvery) j["refit_every"] = *f.refitEvery;
  if (f.standardize) j["standardize"] = *f.standardize;
  if (f.monotone) j["monotone_bounds"] = *f.monotone;
  if (f.resetOnRefit) j["reset_bounds_on_refit"] = *f.resetOnRefit;
  if (f.objectiveDomain) j["objective_domain"] = *f.objectiveDomain;
  if (f.kernel) j["kernel"] = *f.kernel;
  if (f.out) j["output_dir"] = *f.out;
  if (f.parallelism) j["parallelism"] = *f.parallelism;
  return j;
}

int runCommand(const RunFlags& flags) {
  cobalt::ExperimentConfig config;
  if (!flags.configFile.empty()) {
    std::ifstream in(flags.configFile);
    if (!in) throw std::runtime_error("cannot read config " + flags.configFile);
    cobalt::mergeJson(config, json::parse(in));
  }
  cobalt::mergeJson(config, flagOverrides(flags));
  const auto result = cobalt::runExperiment(config);
  std::cout << "task " << result.task.name << ", algorithm " << cobalt::to_string(config.algorithm) << ", "
            << config.trials << " trial(s), T = " << config.budget << "\n"
            << "median final regret: " << result.summary["median_final_regret"].dump() << "\n"
            << "trials at zero regret: " << result.summary["trials_at_zero_regret"].get<int>() << "\n"
            << "artifacts in " << config.outputDir << "\n";
  return 0;
}

struct ValidateFlags {
  std::string suite = "all";
  int trials = 50;
  int budget = 100;
  double delta = 0.1;
  std::uint64_t seed = 1;
  cobalt::SampledProblemSpec spec;
  std::string kernel = "squared_exponential";
};

json chainJson(const cobalt::TheoryReport& r) {
  json chains = json::array();
  for (const auto& c : r.chains)
    chains.push_back({{"alpha_T", c.alphaT},
                      {"ci_width", c.ciWidth},
                      {"alpha_increases", c.alphaIncreases},
                      {"alpha_increases_at_threshold_onset", c.alphaIncreasesAtThresholdOnset},
                      {"gamma_hat_greedy", c.gammaHat},
                      {"beta_T", c.betaT},
                      {"rate_bound", c.rateBound},
                      {"alpha_over_rate_bound", c.boundRatio},
                      {"budget_bound", c.budgetBound}});
  return {{"runs", r.chainRuns},
          {"failures", r.chainFailures},
          {"failure_messages", r.failureMessages},
          {"crossings", r.crossings},
          {"empty_roi", r.emptyRoi},
          {"c1", r.c1},
          {"chains", chains}};
}

int validateCommand(ValidateFlags flags) {
  flags.spec.family = cobalt::kernelFamilyFromString(flags.kernel);
  json report = json::object();
  bool ok = true;
  if (flags.suite == "all" || flags.suite == "lemma1") {
    const auto r = cobalt::validateLemma1(flags.spec, flags.trials, flags.budget, flags.delta, flags.seed);
    const bool pass = r.coverageRate >= r.coverageThreshold;
    ok = ok && pass;
    report["lemma1"] = {{"trials", r.trials},
                        {"covered", r.covered},
                        {"coverage_rate", r.coverageRate},
                        {"threshold", r.coverageThreshold},
                        {"crossings", r.crossings},
                        {"empty_roi", r.emptyRoi},
                        {"passed", pass}};
  }
  if (flags.suite == "all" || flags.suite == "theorem1") {
    const auto r = cobalt::validateTheoremChain(flags.spec, flags.trials, flags.budget, flags.delta, false, flags.seed);
    ok = ok && r.chainFailures == 0;
    report["theorem1"] = chainJson(r);
  }
  if (flags.suite == "all" || flags.suite == "theorem3") {
    const auto r = cobalt::validateTheoremChain(flags.spec, flags.trials, flags.budget, flags.delta, true, flags.seed);
    ok = ok && r.chainFailures == 0;
    report["theorem3"] = chainJson(r);
  }
  report["passed"] = ok;
  std::cout << report.dump(2) << "\n";
  return ok ? 0 : 1;
}

int tasksCommand() {
  for (const auto& name : cobalt::taskNames()) {
    const auto task = cobalt::makeTask(name);
    std::cout << name << "  dim=" << task.dim() << " grid=" << task.gridSize() << " constraints=" << task.numConstraints()
              << " feasible_fraction=" << task.feasibleFraction << " optimum_index=" << task.optimumIndex
              << " optimum_value=" << cobalt::formatDouble(task.optimumValue) << "\n";
  }
  return 0;
}

struct InfoGainFlags {
  std::string task = "rastrigin-1d-1c@60";
  int T = 10;
  double sigma2 = 0.01;
  double lengthscale = 1.0;
  double outputscale = 1.0;
  std::string kernel = "matern52";
};

int infoGainCommand(const InfoGainFlags& f) {
  const auto task = cobalt::makeTask(f.task);
  const cobalt::Kerneld kernel(cobalt::kernelFamilyFromString(f.kernel), task.dim(), f.lengthscale, f.outputscale);
  const auto curve = cobalt::greedyInfoGainCurve(kernel, *task.grid, f.T, f.sigma2);
  json j{{"task", task.name},
         {"T", f.T},
         {"sigma2", f.sigma2},
         {"kernel", f.kernel},
         {"lengthscale", f.lengthscale},
         {"outputscale", f.outputscale},
         {"gamma_T_greedy", curve.empty() ? 0.0 : curve.back()},
         {"c1", cobalt::c1Constant(f.sigma2)},
         {"curve", curve}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cobalt: constrained Bayesian optimization with adaptive level-set learning"};
  app.require_subcommand(1);

  RunFlags run;
  auto* runCmd = app.add_subcommand("run", "run a multi-trial experiment");
  runCmd->add_option("--config", run.configFile, "JSON config file; flags override its fields");
  runCmd->add_option("--task", run.task, "task name (see `tasks`)");
  runCmd->add_option("--algorithm", run.algorithm, "cobalt-coupled | cobalt-decoupled | cei | random");
  runCmd->add_option("--trials", run.trials);
  runCmd->add_option("--budget", run.budget, "optimization iterations T");
  runCmd->add_option("--seed", run.seed, "base seed; trial i uses seed + i");
  runCmd->add_option("--delta", run.delta);
  runCmd->add_option("--beta-mode", run.betaMode, "scheduled | constant");
  runCmd->add_option("--beta-constant", run.betaConstant);
  runCmd->add_option("--init-design", run.initDesign);
  runCmd->add_option("--refit-every", run.refitEvery, "0 disables hyperparameter refits");
  runCmd->add_option("--standardize", run.standardize);
  runCmd->add_option("--monotone-bounds", run.monotone);
  runCmd->add_option("--reset-bounds-on-refit", run.resetOnRefit);
  runCmd->add_option("--objective-domain", run.objectiveDomain, "roi_f | roi_combined");
  runCmd->add_option("--kernel", run.kernel, "matern52 | squared_exponential");
  runCmd->add_option("--out", run.out, "output directory");
  runCmd->add_option("--parallelism", run.parallelism, "worker threads");

  ValidateFlags val;
  auto* valCmd = app.add_subcommand("validate", "check ROI coverage and the acquisition/CI chain on prior samples");
  valCmd->add_option("--suite", val.suite, "lemma1 | theorem1 | theorem3 | all")
      ->check(CLI::IsMember({"lemma1", "theorem1", "theorem3", "all"}));
  valCmd->add_option("--trials", val.trials);
  valCmd->add_option("--budget", val.budget);
  valCmd->add_option("--delta", val.delta);
  valCmd->add_option("--seed", val.seed);
  valCmd->add_option("--grid-size", val.spec.gridSize);
  valCmd->add_option("--constraints", val.spec.numConstraints);
  valCmd->add_option("--lengthscale", val.spec.lengthscale);
  valCmd->add_option("--noise-std", val.spec.noiseStd);
  valCmd->add_option("--margin", val.spec.margin);
  valCmd->add_option("--kernel", val.kernel);

  auto* tasksCmd = app.add_subcommand("tasks", "list the task registry");

  InfoGainFlags ig;
  auto* igCmd = app.add_subcommand("info-gain", "greedy maximum information gain on a task grid");
  igCmd->add_option("--task", ig.task);
  igCmd->add_option("--T", ig.T);
  igCmd->add_option("--sigma2", ig.sigma2);
  igCmd->add_option("--lengthscale", ig.lengthscale);
  igCmd->add_option("--outputscale", ig.outputscale);
  igCmd->add_option("--kernel", ig.kernel);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*runCmd) return runCommand(run);
    if (*valCmd) return validateCommand(val);
    if (*tasksCmd) return tasksCommand();
    if (*igCmd) return infoGainCommand(ig);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
