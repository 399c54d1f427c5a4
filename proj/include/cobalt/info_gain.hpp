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

// Mutual information between noisy observations and a GP on a finite set.

#ifndef COBALT_INFO_GAIN_HPP
#define COBALT_INFO_GAIN_HPP

#include <Eigen/Dense>

#include <vector>

#include "cobalt/gp.hpp"

namespace cobalt {

/// 1/2 logdet(I + K_A / sigma2) for the rows of `grid` listed in `subset`.
double infoGain(const Kerneld& kernel, const Eigen::MatrixXd& grid, const std::vector<Eigen::Index>& subset,
                double sigma2);

/// Greedy forward selection of distinct points; entry t-1 is the greedy
/// information gain of the first t picks. Each pick maximizes
/// 1/2 log(1 + var(x) / sigma2) under the posterior of the picks so far.
std::vector<double> greedyInfoGainCurve(const Kerneld& kernel, const Eigen::MatrixXd& grid, int T, double sigma2);

/// Greedy estimate (a lower bound) of the maximum information gain over
/// T-point subsets of the grid.
double greedyMaxInfoGain(const Kerneld& kernel, const Eigen::MatrixXd& grid, int T, double sigma2);

}  // namespace cobalt

#endif  // COBALT_INFO_GAIN_HPP
