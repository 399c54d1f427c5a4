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

// Independent reference computations used by the tests. Nothing here calls
// into the library's numerics: kernels, solves and determinants are written
// out directly with explicit inverses and LU determinants.

#ifndef COBALT_TESTS_ORACLES_HPP
#define COBALT_TESTS_ORACLES_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace oracle {

enum class Family { SE, Matern52 };

inline double kernel(Family fam, const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& ls,
                     double os) {
  double r2 = 0.0;
  for (Eigen::Index j = 0; j < a.size(); ++j) r2 += std::pow((a(j) - b(j)) / ls(j), 2);
  if (fam == Family::SE) return os * std::exp(-0.5 * r2);
  const double r = std::sqrt(r2);
  return os * (1.0 + std::sqrt(5.0) * r + 5.0 * r2 / 3.0) * std::exp(-std::sqrt(5.0) * r);
}

inline Eigen::MatrixXd gram(Family fam, const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const Eigen::VectorXd& ls,
                            double os) {
  Eigen::MatrixXd k(A.rows(), B.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < B.rows(); ++j) k(i, j) = kernel(fam, A.row(i).transpose(), B.row(j).transpose(), ls, os);
  return k;
}

struct Posterior {
  Eigen::VectorXd mean, stdDev;
};

/// Eqs. of the GP posterior with an explicit inverse of K + s2 I.
inline Posterior posterior(Family fam, const Eigen::VectorXd& ls, double os, const Eigen::MatrixXd& grid,
                           const std::vector<Eigen::Index>& idx, const std::vector<double>& y, double s2) {
  const Eigen::Index n = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd X(n, grid.cols());
  Eigen::VectorXd yv(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    X.row(i) = grid.row(idx[static_cast<std::size_t>(i)]);
    yv(i) = y[static_cast<std::size_t>(i)];
  }
  Posterior p;
  p.mean = Eigen::VectorXd::Zero(grid.rows());
  p.stdDev = Eigen::VectorXd::Constant(grid.rows(), std::sqrt(os));
  if (n == 0) return p;
  Eigen::MatrixXd K = gram(fam, X, X, ls, os);
  K.diagonal().array() += s2;
  const Eigen::MatrixXd Kinv = K.fullPivLu().inverse();
  const Eigen::MatrixXd ks = gram(fam, X, grid, ls, os);
  p.mean = ks.transpose() * Kinv * yv;
  for (Eigen::Index i = 0; i < grid.rows(); ++i) {
    const double v = os - ks.col(i).dot(Kinv * ks.col(i));
    p.stdDev(i) = std::sqrt(std::max(v, 0.0));
  }
  return p;
}

inline double logMarginal(Family fam, const Eigen::VectorXd& ls, double os, const Eigen::MatrixXd& X,
                          const Eigen::VectorXd& y, double s2) {
  Eigen::MatrixXd K = gram(fam, X, X, ls, os);
  K.diagonal().array() += s2;
  const double det = K.fullPivLu().determinant();
  return -0.5 * y.dot(K.fullPivLu().inverse() * y) - 0.5 * std::log(det) -
         0.5 * static_cast<double>(y.size()) * std::log(2.0 * std::numbers::pi);
}

/// 1/2 log det(I + K / s2) by LU determinant.
inline double infoGain(Family fam, const Eigen::VectorXd& ls, double os, const Eigen::MatrixXd& grid,
                       const std::vector<Eigen::Index>& subset, double s2) {
  if (subset.empty()) return 0.0;
  Eigen::MatrixXd X(static_cast<Eigen::Index>(subset.size()), grid.cols());
  for (std::size_t i = 0; i < subset.size(); ++i) X.row(static_cast<Eigen::Index>(i)) = grid.row(subset[i]);
  Eigen::MatrixXd M = gram(fam, X, X, ls, os) / s2;
  M.diagonal().array() += 1.0;
  return 0.5 * std::log(M.fullPivLu().determinant());
}

/// Set-builder re-evaluation of the region definitions, point by point.
struct Regions {
  std::vector<std::vector<Eigen::Index>> S, L, U;
  std::vector<Eigen::Index> roiC, roiF, roi;
  double lcbFMax = -std::numeric_limits<double>::infinity();
};

inline Regions regions(const std::vector<Eigen::VectorXd>& ucb, const std::vector<Eigen::VectorXd>& lcb,
                       const std::vector<double>& h) {
  Regions r;
  const Eigen::Index N = ucb[0].size();
  const std::size_t K = h.size();
  r.S.resize(K);
  r.L.resize(K);
  r.U.resize(K);
  for (Eigen::Index i = 0; i < N; ++i) {
    bool allS = true, allRoiC = true;
    for (std::size_t k = 0; k < K; ++k) {
      const double u = ucb[k + 1](i), l = lcb[k + 1](i);
      if (l > h[k]) r.S[k].push_back(i);
      else if (u < h[k]) r.L[k].push_back(i);
      else r.U[k].push_back(i);
      allS = allS && l > h[k];
      allRoiC = allRoiC && u >= h[k];
    }
    if (allS) r.lcbFMax = std::max(r.lcbFMax, lcb[0](i));
    if (allRoiC) r.roiC.push_back(i);
  }
  for (Eigen::Index i = 0; i < N; ++i) {
    const bool inF = ucb[0](i) >= r.lcbFMax;
    if (inF) r.roiF.push_back(i);
    if (inF && std::find(r.roiC.begin(), r.roiC.end(), i) != r.roiC.end()) r.roi.push_back(i);
  }
  return r;
}

}  // namespace oracle

#endif  // COBALT_TESTS_ORACLES_HPP
