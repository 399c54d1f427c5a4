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

#include <cmath>
#include <numbers>
#include <random>

#include "cobalt/tasks.hpp"
#include "doctest.h"

using namespace cobalt;

TEST_CASE("rastrigin: unconstrained maximum at the origin") {
  CHECK(rastriginObjective(Eigen::VectorXd::Zero(1)) == 0.0);
  CHECK(rastriginObjective(Eigen::VectorXd::Constant(1, 2.0)) == doctest::Approx(-4.0).epsilon(1e-12));
}

TEST_CASE("rastrigin-1d-1c@60: feasible fraction and constrained optimum by grid scan") {
  const auto task = makeTask("rastrigin-1d-1c@60");
  CHECK(task.gridSize() == 1000);
  CHECK(task.thresholds[0] == std::numbers::sqrt2);
  // Independent scan.
  int feasible = 0;
  Eigen::Index best = -1;
  double bestValue = -1e300;
  for (Eigen::Index i = 0; i < 1000; ++i) {
    const double x = -5.0 + 10.0 * static_cast<double>(i) / 999.0;
    if (std::sqrt(std::abs(x + 0.7)) > std::numbers::sqrt2) {
      ++feasible;
      const double f = -10.0 - (x * x - 10.0 * std::cos(2.0 * std::numbers::pi * x));
      if (f > bestValue) {
        bestValue = f;
        best = i;
      }
    }
  }
  CHECK(task.feasibleFraction == doctest::Approx(feasible / 1000.0));
  CHECK(std::abs(task.feasibleFraction - 0.60) <= 0.01);
  CHECK(task.optimumIndex == best);
  CHECK(std::abs((*task.grid)(task.optimumIndex, 0) - 2.0) < 0.05);
  CHECK(task.optimumValue == doctest::Approx(-4.0).epsilon(0.01));
  CHECK(reward(task.optimumIndex, task).value() == task.optimumValue);
}

TEST_CASE("rastrigin sweep: every variant hits its labeled fraction") {
  for (int p : rastriginSweepFractions()) {
    const auto task = rastrigin1D1C(p);
    CHECK(std::abs(task.feasibleFraction - p / 100.0) <= 0.01);
    CHECK(task.hasFeasiblePoint());
  }
  CHECK_THROWS(rastrigin1D1C(33));
  CHECK_THROWS(makeTask("rastrigin-1d-1c@abc"));
  CHECK_THROWS(makeTask("nope"));
}

TEST_CASE("ackley: origin, boundary arithmetic and sign") {
  CHECK(std::abs(ackleyObjective(Eigen::VectorXd::Zero(5))) < 1e-12);
  CHECK(ackleyObjective(Eigen::VectorXd::Constant(5, 1.5)) < 0.0);
  CHECK(ackleyBoxConstraint(Eigen::VectorXd::Constant(5, 2.9)) > 0.0);
  CHECK(ackleyBoxConstraint(Eigen::VectorXd::Constant(5, 3.0)) == 0.0);
  // Ring: distance 5.5 +- 1 from the all-ones point is infeasible.
  Eigen::VectorXd x = Eigen::VectorXd::Ones(5);
  x(0) += 5.5;
  CHECK(ackleyRingConstraint(x) == doctest::Approx(-1.0));
  CHECK(ackleyRingConstraint(Eigen::VectorXd::Ones(5)) > 0.0);
}

TEST_CASE("ackley-5d-2c: grid and feasible fraction") {
  const auto task = makeTask("ackley-5d-2c");
  CHECK(task.gridSize() == 4096);
  CHECK(task.dim() == 5);
  CHECK((task.grid->array() >= -5.0).all());
  CHECK((task.grid->array() <= 3.0).all());
  CHECK(std::abs(task.feasibleFraction - 0.14) <= 0.03);
  // Boundary point of the box constraint is infeasible under strict inequality.
  Eigen::MatrixXd g(1, 5);
  g.setConstant(3.0);
  const auto edge = makeTask("edge", g, {ackleyObjective, ackleyRingConstraint, ackleyBoxConstraint}, {0.0, 0.0},
                             {0.1, 0.1, 0.1});
  CHECK_FALSE(reward(0, edge).isFeasible());
}

TEST_CASE("reward: feasibility is strict") {
  Eigen::MatrixXd g(3, 1);
  g << 0.0, 1.0, 2.0;
  const auto task = makeTask(
      "toy", g, {[](const Eigen::Ref<const Eigen::VectorXd>& x) { return -x(0); },
                 [](const Eigen::Ref<const Eigen::VectorXd>& x) { return x(0); }},
      {1.0}, {0.1, 0.1});
  CHECK_FALSE(reward(0, task).isFeasible());
  CHECK_FALSE(reward(1, task).isFeasible());
  CHECK(reward(2, task).value() == -2.0);
  CHECK_THROWS_AS(reward(0, task).value(), std::logic_error);
  CHECK_THROWS(reward(3, task));
}

TEST_CASE("task construction enforces the declared feasibility margin") {
  Eigen::MatrixXd g(2, 1);
  g << 0.0, 1.0;
  auto f = [](const Eigen::Ref<const Eigen::VectorXd>& x) { return x(0); };
  CHECK_NOTHROW(makeTask("ok", g, {f, f}, {0.5}, {0.1, 0.1}, 0.4));
  CHECK_THROWS(makeTask("tight", g, {f, f}, {0.5}, {0.1, 0.1}, 0.6));
}

TEST_CASE("ppfThreshold: quantile shifts") {
  CHECK(ppfThreshold(0.0, 1.0, 0.5) == doctest::Approx(0.0));
  CHECK(ppfThreshold(0.0, 1.0, 0.975) == doctest::Approx(1.95996).epsilon(1e-5));
  CHECK(ppfThreshold(3.0, 2.0, 0.5) == doctest::Approx(3.0));
  CHECK_THROWS(ppfThreshold(0.0, 1.0, 1.0));
  CHECK_THROWS(ppfThreshold(0.0, 1.0, 0.0));
}

TEST_CASE("simpleRegretCurve: zero from the optimum, sentinel without feasibility, recomputation") {
  const auto task = makeTask("rastrigin-1d-1c@60");
  const auto zeros = simpleRegretCurve({task.optimumIndex, 0, 500}, task);
  for (const auto& r : zeros) CHECK(r.value() == 0.0);

  const auto none = simpleRegretCurve({499, 500, 501}, task);  // x near 0, infeasible
  for (const auto& r : none) CHECK_FALSE(r.isFinite());

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pick(0, 999);
  std::vector<Eigen::Index> q;
  for (int i = 0; i < 300; ++i) q.push_back(pick(rng));
  const auto curve = simpleRegretCurve(q, task);
  double best = -1e300;
  bool any = false;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Eigen::Index idx = q[i];
    const double x = (*task.grid)(idx, 0);
    if (std::sqrt(std::abs(x + 0.7)) > std::numbers::sqrt2) {
      any = true;
      best = std::max(best, task.values[0](idx));
    }
    CHECK(curve[i].isFinite() == any);
    if (any) CHECK(curve[i].value() == task.optimumValue - best);
    if (i > 0 && curve[i - 1].isFinite()) CHECK(curve[i].value() <= curve[i - 1].value());
  }
}

TEST_CASE("Reward and SimpleRegret sentinels") {
  CHECK(Reward::best(Reward::infeasible(), Reward::feasible(-3.0)) == Reward::feasible(-3.0));
  CHECK(Reward::best(Reward::feasible(-1.0), Reward::feasible(-3.0)) == Reward::feasible(-1.0));
  CHECK_FALSE(Reward::best(Reward::infeasible(), Reward::infeasible()).isFeasible());
  CHECK_FALSE(SimpleRegret::of(1.0, Reward::infeasible()).isFinite());
  CHECK(SimpleRegret::of(1.0, Reward::feasible(0.25)).value() == 0.75);
  CHECK_THROWS_AS(SimpleRegret::sentinel().value(), std::logic_error);
}

TEST_CASE("haltonGrid: deterministic and inside the box") {
  const auto a = haltonGrid(100, 3, -1.0, 2.0, 9), b = haltonGrid(100, 3, -1.0, 2.0, 9);
  CHECK(a == b);
  CHECK((a.array() >= -1.0).all());
  CHECK((a.array() < 2.0).all());
  CHECK(haltonGrid(100, 3, -1.0, 2.0, 10) != a);
}
