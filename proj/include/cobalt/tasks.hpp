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

// Benchmark tasks on finite grids, the constrained reward, and simple regret.

#ifndef COBALT_TASKS_HPP
#define COBALT_TASKS_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cobalt {

using PointFunction = std::function<double(const Eigen::Ref<const Eigen::VectorXd>&)>;

/// Reward of a query: f(x) when every constraint holds strictly, otherwise
/// the infeasible sentinel. The sentinel carries no number.
class Reward {
 public:
  static Reward feasible(double value) { return Reward(value); }
  static Reward infeasible() { return Reward(); }

  bool isFeasible() const { return value_.has_value(); }
  double value() const {
    if (!value_) throw std::logic_error("arithmetic on the infeasible reward sentinel");
    return *value_;
  }
  /// The better of two rewards; any feasible reward beats the sentinel.
  static Reward best(const Reward& a, const Reward& b) {
    if (!a.isFeasible()) return b;
    if (!b.isFeasible()) return a;
    return a.value() >= b.value() ? a : b;
  }
  friend bool operator==(const Reward&, const Reward&) = default;

 private:
  Reward() = default;
  explicit Reward(double v) : value_(v) {}
  std::optional<double> value_;
};

/// r(x*) minus the best reward so far; the sentinel until a feasible query.
class SimpleRegret {
 public:
  static SimpleRegret of(double optimumValue, const Reward& bestSoFar) {
    SimpleRegret r;
    if (bestSoFar.isFeasible()) r.value_ = optimumValue - bestSoFar.value();
    return r;
  }
  static SimpleRegret sentinel() { return SimpleRegret(); }

  bool isFinite() const { return value_.has_value(); }
  double value() const {
    if (!value_) throw std::logic_error("arithmetic on the infinite regret sentinel");
    return *value_;
  }
  friend bool operator==(const SimpleRegret&, const SimpleRegret&) = default;

 private:
  std::optional<double> value_;
};

struct TaskDefinition {
  std::string name;
  std::shared_ptr<const Eigen::MatrixXd> grid;  // N x d
  // Noise-free values on the grid; index 0 is the objective, k >= 1 constraint k.
  std::vector<Eigen::VectorXd> values;
  std::vector<double> thresholds;
  std::vector<double> noiseStd;  // one per function
  double feasibilityMargin = 0.0;

  // Derived by finalize().
  Eigen::Index optimumIndex = -1;
  double optimumValue = 0.0;
  double feasibleFraction = 0.0;
  double objectiveMin = 0.0;

  Eigen::Index gridSize() const { return grid->rows(); }
  Eigen::Index dim() const { return grid->cols(); }
  int numConstraints() const { return static_cast<int>(values.size()) - 1; }
  int numFunctions() const { return static_cast<int>(values.size()); }
  bool hasFeasiblePoint() const { return optimumIndex >= 0; }
  bool isFeasible(Eigen::Index i) const;

  /// Computes the grid optimum, feasible fraction and objective range, and
  /// checks that the optimum clears the declared feasibility margin.
  void finalize();
};

/// Evaluates `functions` on every grid row and finalizes the task.
TaskDefinition makeTask(std::string name, Eigen::MatrixXd grid, const std::vector<PointFunction>& functions,
                        std::vector<double> thresholds, std::vector<double> noiseStd, double margin = 0.0);

double rastriginObjective(const Eigen::Ref<const Eigen::VectorXd>& x);
double ackleyObjective(const Eigen::Ref<const Eigen::VectorXd>& x);
/// (||x - 1|| - 5.5)^2 - 1: a central ball and an outer shell.
double ackleyRingConstraint(const Eigen::Ref<const Eigen::VectorXd>& x);
/// 9 - ||x||_inf^2: the central cube.
double ackleyBoxConstraint(const Eigen::Ref<const Eigen::VectorXd>& x);

/// Feasible-fraction labels (percent) of the threshold sweep.
const std::vector<int>& rastriginSweepFractions();

/// 1000-point grid on [-5, 5], c(x) = |x + 0.7|^(1/2). The 60% variant uses
/// the threshold sqrt(2); the other labels get thresholds solved on the grid.
TaskDefinition rastrigin1D1C(int feasiblePercent = 60);

/// Negated Ackley on 4096 rotated Halton points in [-5, 3]^5 with two
/// constraints, both with threshold 0.
TaskDefinition ackley5D2C(std::uint64_t gridSeed = 7);

/// Threshold such that exactly round(fraction * N) grid values exceed it.
double thresholdForFraction(const Eigen::VectorXd& constraintValues, double fraction);

/// Registry names: rastrigin-1d-1c@<pct> for each sweep label, and ackley-5d-2c.
std::vector<std::string> taskNames();
TaskDefinition makeTask(const std::string& name);

Reward reward(Eigen::Index index, const TaskDefinition& task);

/// h + sigma * Phi^-1(mu): the deterministic threshold equivalent to
/// Pr(Y > h) >= mu under Gaussian observation noise.
double ppfThreshold(double h, double sigma, double mu);

/// Regret after each query in order.
std::vector<SimpleRegret> simpleRegretCurve(const std::vector<Eigen::Index>& queries, const TaskDefinition& task);

/// Scrambled low-discrepancy points (Halton with a Cranley-Patterson
/// rotation) scaled to [lower, upper]^dim.
Eigen::MatrixXd haltonGrid(Eigen::Index count, Eigen::Index dim, double lower, double upper, std::uint64_t seed);

}  // namespace cobalt

#endif  // COBALT_TASKS_HPP
