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

#include "cobalt/info_gain.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace cobalt {

double infoGain(const Kerneld& kernel, const Eigen::MatrixXd& grid, const std::vector<Eigen::Index>& subset,
                double sigma2) {
  if (!(sigma2 > 0.0)) throw std::invalid_argument("infoGain: noise variance must be positive");
  if (subset.empty()) return 0.0;
  const Eigen::Index n = static_cast<Eigen::Index>(subset.size());
  Eigen::MatrixXd points(n, grid.cols());
  for (Eigen::Index i = 0; i < n; ++i) points.row(i) = grid.row(subset[static_cast<std::size_t>(i)]);
  Eigen::MatrixXd m = gram(kernel, points, points) / sigma2;
  m.diagonal().array() += 1.0;
  const Eigen::MatrixXd l = detail::choleskyWithJitter(m, "information gain");
  return l.diagonal().array().log().sum();
}

std::vector<double> greedyInfoGainCurve(const Kerneld& kernel, const Eigen::MatrixXd& grid, int T, double sigma2) {
  if (!(sigma2 > 0.0)) throw std::invalid_argument("greedyInfoGain: noise variance must be positive");
  if (T < 0 || T > grid.rows()) throw std::invalid_argument("greedyInfoGain: T must lie in [0, |grid|]");
  GpSurrogated gp(kernel, std::make_shared<const Eigen::MatrixXd>(grid), sigma2);
  std::vector<bool> taken(static_cast<std::size_t>(grid.rows()), false);
  std::vector<double> curve;
  double total = 0.0;
  for (int t = 0; t < T; ++t) {
    const Eigen::VectorXd var = gp.standardizedVariance();
    Eigen::Index pick = -1;
    for (Eigen::Index i = 0; i < var.size(); ++i)
      if (!taken[static_cast<std::size_t>(i)] && (pick < 0 || var(i) > var(pick))) pick = i;
    total += 0.5 * std::log1p(var(pick) / sigma2);
    curve.push_back(total);
    taken[static_cast<std::size_t>(pick)] = true;
    gp.observe(pick, 0.0);
  }
  return curve;
}

double greedyMaxInfoGain(const Kerneld& kernel, const Eigen::MatrixXd& grid, int T, double sigma2) {
  const auto curve = greedyInfoGainCurve(kernel, grid, T, sigma2);
  return curve.empty() ? 0.0 : curve.back();
}

}  // namespace cobalt
