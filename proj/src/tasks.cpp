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

#include "cobalt/tasks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "cobalt/normal.hpp"

namespace cobalt {

bool TaskDefinition::isFeasible(Eigen::Index i) const {
  for (int k = 1; k < numFunctions(); ++k)
    if (!(values[static_cast<std::size_t>(k)](i) > thresholds[static_cast<std::size_t>(k - 1)])) return false;
  return true;
}

void TaskDefinition::finalize() {
  if (!grid || grid->rows() == 0) throw std::invalid_argument("task grid must be nonempty");
  if (values.empty()) throw std::invalid_argument("task needs an objective");
  if (static_cast<int>(thresholds.size()) != numConstraints())
    throw std::invalid_argument("task needs one threshold per constraint");
  if (static_cast<int>(noiseStd.size()) != numFunctions())
    throw std::invalid_argument("task needs one noise level per function");
  for (const auto& v : values)
    if (v.size() != grid->rows()) throw std::invalid_argument("task values do not cover the grid");

  optimumIndex = -1;
  optimumValue = -std::numeric_limits<double>::infinity();
  Eigen::Index feasible = 0;
  for (Eigen::Index i = 0; i < gridSize(); ++i) {
    if (!isFeasible(i)) continue;
    ++feasible;
    if (values[0](i) > optimumValue) {
      optimumValue = values[0](i);
      optimumIndex = i;
    }
  }
  if (optimumIndex < 0) optimumValue = 0.0;
  feasibleFraction = static_cast<double>(feasible) / static_cast<double>(gridSize());
  objectiveMin = values[0].minCoeff();

  if (feasibilityMargin > 0.0 && optimumIndex >= 0) {
    for (int k = 1; k < numFunctions(); ++k) {
      const double clearance =
          values[static_cast<std::size_t>(k)](optimumIndex) - thresholds[static_cast<std::size_t>(k - 1)];
      if (!(clearance > feasibilityMargin))
        throw std::invalid_argument("task " + name + ": optimum violates the feasibility margin");
    }
  }
}

TaskDefinition makeTask(std::string name, Eigen::MatrixXd grid, const std::vector<PointFunction>& functions,
                        std::vector<double> thresholds, std::vector<double> noiseStd, double margin) {
  TaskDefinition task;
  task.name = std::move(name);
  task.grid = std::make_shared<const Eigen::MatrixXd>(std::move(grid));
  for (const auto& fn : functions) {
    Eigen::VectorXd v(task.grid->rows());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = fn(task.grid->row(i).transpose());
    task.values.push_back(std::move(v));
  }
  task.thresholds = std::move(thresholds);
  task.noiseStd = std::move(noiseStd);
  task.feasibilityMargin = margin;
  task.finalize();
  return task;
}

double rastriginObjective(const Eigen::Ref<const Eigen::VectorXd>& x) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += x(i) * x(i) - 10.0 * std::cos(2.0 * std::numbers::pi * x(i));
  return -10.0 * static_cast<double>(x.size()) - s;
}

double ackleyObjective(const Eigen::Ref<const Eigen::VectorXd>& x) {
  const double d = static_cast<double>(x.size());
  const double sq = x.squaredNorm() / d;
  double cs = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) cs += std::cos(2.0 * std::numbers::pi * x(i));
  const double ackley = -20.0 * std::exp(-0.2 * std::sqrt(sq)) - std::exp(cs / d) + 20.0 + std::numbers::e;
  return -ackley;
}

const std::vector<int>& rastriginSweepFractions() {
  static const std::vector<int> fractions{10, 20, 40, 60, 80, 100};
  return fractions;
}

double thresholdForFraction(const Eigen::VectorXd& constraintValues, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw std::invalid_argument("fraction must lie in [0, 1]");
  std::vector<double> v(constraintValues.data(), constraintValues.data() + constraintValues.size());
  std::sort(v.begin(), v.end());
  const auto n = static_cast<std::ptrdiff_t>(v.size());
  const auto count = static_cast<std::ptrdiff_t>(std::llround(fraction * static_cast<double>(n)));
  if (count >= n) return v.front() - 1.0;
  if (count <= 0) return v.back() + 1.0;
  return 0.5 * (v[static_cast<std::size_t>(n - count - 1)] + v[static_cast<std::size_t>(n - count)]);
}

TaskDefinition rastrigin1D1C(int feasiblePercent) {
  const auto& labels = rastriginSweepFractions();
  if (std::find(labels.begin(), labels.end(), feasiblePercent) == labels.end())
    throw std::invalid_argument("unknown rastrigin-1d-1c variant @" + std::to_string(feasiblePercent));
  constexpr Eigen::Index n = 1000;
  const Eigen::MatrixXd grid = Eigen::VectorXd::LinSpaced(n, -5.0, 5.0);
  const PointFunction constraint = [](const Eigen::Ref<const Eigen::VectorXd>& x) {
    return std::sqrt(std::abs(x(0) + 0.7));
  };
  double threshold = std::numbers::sqrt2;
  if (feasiblePercent != 60) {
    Eigen::VectorXd cv(n);
    for (Eigen::Index i = 0; i < n; ++i) cv(i) = constraint(grid.row(i).transpose());
    threshold = thresholdForFraction(cv, feasiblePercent / 100.0);
  }
  return makeTask("rastrigin-1d-1c@" + std::to_string(feasiblePercent), grid, {rastriginObjective, constraint},
                  {threshold}, {0.1, 0.1});
}

Eigen::MatrixXd haltonGrid(Eigen::Index count, Eigen::Index dim, double lower, double upper, std::uint64_t seed) {
  static constexpr int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  if (dim > static_cast<Eigen::Index>(std::size(primes))) throw std::invalid_argument("haltonGrid: dimension too large");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Eigen::MatrixXd out(count, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const int base = primes[j];
    const double shift = uniform(rng);
    for (Eigen::Index i = 0; i < count; ++i) {
      double f = 1.0, r = 0.0;
      for (Eigen::Index k = i + 1; k > 0; k /= base) {
        f /= base;
        r += f * static_cast<double>(k % base);
      }
      const double u = std::fmod(r + shift, 1.0);
      out(i, j) = lower + (upper - lower) * u;
    }
  }
  return out;
}

double ackleyRingConstraint(const Eigen::Ref<const Eigen::VectorXd>& x) {
  const double r = (x.array() - 1.0).matrix().norm() - 5.5;
  return r * r - 1.0;
}

double ackleyBoxConstraint(const Eigen::Ref<const Eigen::VectorXd>& x) {
  const double m = x.cwiseAbs().maxCoeff();
  return -m * m + 9.0;
}

TaskDefinition ackley5D2C(std::uint64_t gridSeed) {
  return makeTask("ackley-5d-2c", haltonGrid(4096, 5, -5.0, 3.0, gridSeed),
                  {ackleyObjective, ackleyRingConstraint, ackleyBoxConstraint},
                  {0.0, 0.0}, {0.1, 0.1, 0.1});
}

std::vector<std::string> taskNames() {
  std::vector<std::string> names;
  for (int p : rastriginSweepFractions()) names.push_back("rastrigin-1d-1c@" + std::to_string(p));
  names.push_back("ackley-5d-2c");
  return names;
}

TaskDefinition makeTask(const std::string& name) {
  if (name == "rastrigin-1d-1c") return rastrigin1D1C(60);
  const std::string prefix = "rastrigin-1d-1c@";
  if (name.rfind(prefix, 0) == 0) {
    const std::string label = name.substr(prefix.size());
    if (label.empty() || label.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("unknown task: " + name);
    return rastrigin1D1C(std::stoi(label));
  }
  if (name == "ackley-5d-2c") return ackley5D2C();
  throw std::invalid_argument("unknown task: " + name);
}

Reward reward(Eigen::Index index, const TaskDefinition& task) {
  if (index < 0 || index >= task.gridSize()) throw std::out_of_range("reward: index outside the grid");
  return task.isFeasible(index) ? Reward::feasible(task.values[0](index)) : Reward::infeasible();
}

double ppfThreshold(double h, double sigma, double mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("ppfThreshold: confidence must lie in (0, 1)");
  if (!(sigma > 0.0)) throw std::invalid_argument("ppfThreshold: sigma must be positive");
  return h + sigma * normalQuantile(mu);
}

std::vector<SimpleRegret> simpleRegretCurve(const std::vector<Eigen::Index>& queries, const TaskDefinition& task) {
  std::vector<SimpleRegret> curve;
  curve.reserve(queries.size());
  Reward best = Reward::infeasible();
  for (Eigen::Index q : queries) {
    best = Reward::best(best, reward(q, task));
    curve.push_back(task.hasFeasiblePoint() ? SimpleRegret::of(task.optimumValue, best) : SimpleRegret::sentinel());
  }
  return curve;
}

}  // namespace cobalt
