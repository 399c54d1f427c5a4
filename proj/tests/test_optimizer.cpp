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

#include <algorithm>
#include <cmath>
#include <set>

#include "cobalt/optimizer.hpp"
#include "cobalt/validation.hpp"
#include "doctest.h"

using namespace cobalt;

namespace {

TaskDefinition smallTask(std::uint64_t seed = 3, int constraints = 1) {
  SampledProblemSpec spec;
  spec.gridSize = 60;
  spec.numConstraints = constraints;
  return sampleProblem(spec, seed);
}

bool sameTrajectory(const TrialRecord& a, const TrialRecord& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto &x = a.rows[i], &y = b.rows[i];
    if (x.t != y.t || x.x != y.x || x.aspect != y.aspect || x.roiSize != y.roiSize) return false;
    if (x.observations.size() != y.observations.size()) return false;
    for (std::size_t g = 0; g < x.observations.size(); ++g) {
      const double p = x.observations[g], q = y.observations[g];
      if (!(p == q || (std::isnan(p) && std::isnan(q)))) return false;
    }
    if (!(x.alpha == y.alpha || (std::isnan(x.alpha) && std::isnan(y.alpha)))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("initDesign: distinct, deterministic, full permutation") {
  const auto a = initDesign(1000, 5, 7);
  CHECK(std::set<Eigen::Index>(a.begin(), a.end()).size() == 5);
  CHECK(a == initDesign(1000, 5, 7));
  CHECK(a != initDesign(1000, 5, 8));
  auto p = initDesign(20, 20, 1);
  std::sort(p.begin(), p.end());
  for (Eigen::Index i = 0; i < 20; ++i) CHECK(p[static_cast<std::size_t>(i)] == i);
  CHECK_THROWS(initDesign(10, 11, 1));
}

TEST_CASE("config validation") {
  OptimizerConfig c;
  c.budget = 0;
  CHECK_THROWS(c.validate());
  c.budget = 1;
  c.initDesignSize = 0;
  CHECK_THROWS(c.validate());
  CHECK_THROWS(algorithmFromString("bogus"));
  CHECK(objectiveDomainFromString(to_string(ObjectiveDomain::RoiCombined)) == ObjectiveDomain::RoiCombined);
}

TEST_CASE("runCoupled: budget 1 with a single design point") {
  const auto task = smallTask();
  OptimizerConfig c;
  c.budget = 1;
  c.initDesignSize = 1;
  const auto r = runCoupled(task, c);
  CHECK(r.error.empty());
  CHECK(r.rows.size() == 2);
  CHECK(r.iterations().size() == 1);
  CHECK(r.rows[0].t == 0);
  CHECK(r.rows[1].t == 1);
}

TEST_CASE("runCoupled: observation accounting, regret monotonicity and determinism") {
  const auto task = smallTask(5, 2);
  OptimizerConfig c;
  c.budget = 40;
  c.initDesignSize = 4;
  c.refitEvery = 10;
  c.seed = 9;
  const auto r = runCoupled(task, c);
  REQUIRE(r.error.empty());
  for (int n : r.observationCounts) CHECK(n == 44);
  int sum = 0;
  for (int n : r.aspectCounts) sum += n;
  CHECK(sum == 40);
  for (const auto& row : r.rows)
    for (double y : row.observations) CHECK_FALSE(std::isnan(y));
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    const auto &p = r.rows[i - 1].regret, &q = r.rows[i].regret;
    if (p.isFinite()) {
      REQUIRE(q.isFinite());
      CHECK(q.value() <= p.value());
    }
  }
  CHECK(sameTrajectory(r, runCoupled(task, c)));
  c.seed = 10;
  CHECK_FALSE(sameTrajectory(r, runCoupled(task, c)));
}

TEST_CASE("runDecoupled: one observation per iteration and per-aspect accounting") {
  const auto task = smallTask(7, 2);
  OptimizerConfig c;
  c.budget = 50;
  c.initDesignSize = 3;
  c.refitEvery = 0;
  const auto r = runDecoupled(task, c);
  REQUIRE(r.error.empty());
  int aspects = 0, observations = 0;
  for (int n : r.aspectCounts) aspects += n;
  for (int n : r.observationCounts) observations += n;
  CHECK(aspects == 50);
  CHECK(observations == 3 * 3 + 50);
  for (const auto* row : r.iterations()) {
    int evaluated = 0;
    for (double y : row->observations) evaluated += std::isnan(y) ? 0 : 1;
    CHECK(evaluated == 1);
  }
}

TEST_CASE("runDecoupled: identical to coupled without constraints") {
  Eigen::MatrixXd grid = Eigen::VectorXd::LinSpaced(80, -2.0, 2.0);
  const auto task = makeTask("unconstrained", grid,
                             {[](const Eigen::Ref<const Eigen::VectorXd>& x) { return -std::pow(x(0) - 0.3, 2); }},
                             {}, {0.1});
  for (std::uint64_t seed : {0u, 1u, 2u}) {
    OptimizerConfig c;
    c.budget = 30;
    c.seed = seed;
    CHECK(sameTrajectory(runCoupled(task, c), runDecoupled(task, c)));
  }
}

TEST_CASE("runCoupled: the shrinkage chain holds with constant beta and fixed kernels") {
  SampledProblemSpec spec;
  spec.gridSize = 80;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto task = sampleProblem(spec, seed);
    const auto c = theoryConfig(spec, 60, 0.1, BetaMode::Constant, seed);
    const auto r = runCoupled(task, c);
    REQUIRE(r.error.empty());
    CHECK(r.diag.roiGrowths == 0);
    CHECK(r.diag.undecidedGrowths == 0);
    CHECK(r.diag.finalCiWithinAlpha);
    for (std::size_t i = 2; i < r.rows.size(); ++i) {
      if (r.rows[i - 1].t < 1) continue;
      CHECK(r.rows[i].roiSize <= r.rows[i - 1].roiSize);
    }
  }
}

TEST_CASE("runCei and runRandom: schema and determinism") {
  const auto task = smallTask(11);
  OptimizerConfig c;
  c.budget = 25;
  c.initDesignSize = 5;
  for (auto run : {runCei, runRandom}) {
    const auto a = run(task, c), b = run(task, c);
    CHECK(a.error.empty());
    CHECK(a.iterations().size() == 25);
    CHECK(sameTrajectory(a, b));
  }
  CHECK(runTrial(task, [] {
          OptimizerConfig r;
          r.algorithm = Algorithm::Random;
          r.budget = 3;
          return r;
        }()).algorithm == Algorithm::Random);
}

TEST_CASE("Evaluator: noise streams are independent per function and reproducible") {
  const auto task = smallTask(13, 2);
  Evaluator a(task, 4), b(task, 4);
  const double a0 = a(0, 3);
  const double b1 = b(1, 3);
  const double b0 = b(0, 3);
  CHECK(a0 == b0);  // drawing from function 1 first does not perturb function 0
  CHECK(a(1, 3) == b1);
  CHECK(a(1, 3) != b1);  // the stream advances
}
