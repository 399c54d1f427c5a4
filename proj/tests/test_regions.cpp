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

#include <limits>
#include <random>

#include "cobalt/regions.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cobalt;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

FunctionBounds fb(std::vector<double> ucb, std::vector<double> lcb) {
  FunctionBounds b;
  b.ucb = Eigen::Map<Eigen::VectorXd>(ucb.data(), static_cast<Eigen::Index>(ucb.size()));
  b.lcb = Eigen::Map<Eigen::VectorXd>(lcb.data(), static_cast<Eigen::Index>(lcb.size()));
  return b;
}

}  // namespace

TEST_CASE("partitionConstraint: definition examples") {
  const auto s = partitionConstraint(fb({2, 2, -0.5}, {1, -1, -1}), 0.0);
  CHECK(s.superlevel == IndexSet{0});
  CHECK(s.undecided == IndexSet{1});
  CHECK(s.sublevel == IndexSet{2});

  const auto all = partitionConstraint(fb({3, 4}, {1, 2}), 0.0);
  CHECK(all.superlevel == IndexSet{0, 1});
  CHECK(all.undecided.empty());
  CHECK(all.sublevel.empty());

  const auto tie = partitionConstraint(fb({0.5}, {0.5}), 0.5);
  CHECK(tie.undecided == IndexSet{0});
}

TEST_CASE("objectiveThreshold: max lcb over the joint superlevel set") {
  const auto f = fb({9, 9, 9, 9, 9, 9}, {0, 0, 1.0, 0, 0, 3.0});
  CHECK(objectiveThreshold(f, {}) == kNegInf);
  CHECK(objectiveThreshold(f, {2, 5}) == 3.0);
  CHECK(objectiveThreshold(f, {2}) == 1.0);
}

TEST_CASE("buildROIs: no filtering with an unset threshold and permissive constraints") {
  BoundsTable t;
  t.functions = {fb({1, 2, 3}, {0, 0, 0}), fb({1, 1, 1}, {-1, -1, -1})};
  const auto r = buildRegions(t, {0.0});
  CHECK(r.lcbFMax == kNegInf);
  CHECK(r.roiCombined == IndexSet{0, 1, 2});
  CHECK(r.fallback == RoiFallback::None);
}

TEST_CASE("buildROIs: a constraint below threshold on half the grid removes exactly that half") {
  BoundsTable t;
  t.functions = {fb({1, 1, 1, 1}, {0, 0, 0, 0}), fb({1, 1, -1, -1}, {-2, -2, -2, -2})};
  const auto r = buildRegions(t, {0.0});
  CHECK(r.roiCombined == IndexSet{0, 1});
}

TEST_CASE("buildROIs: empty combined ROI falls back to the constraint ROI, then the grid") {
  BoundsTable t;
  // Point 0 certainly feasible with a high lcb; point 1 undecided with a low ucb.
  t.functions = {fb({5, 1}, {4, 0}), fb({2, 1}, {1, -1})};
  auto r = buildRegions(t, {0.0});
  CHECK(r.roiCombined == IndexSet{0});

  // No point satisfies the constraint ROI: grid fallback.
  t.functions = {fb({5, 1}, {4, 0}), fb({-1, -1}, {-2, -2})};
  r = buildRegions(t, {0.0});
  CHECK(r.roiCombined.empty());
  CHECK(r.fallback == RoiFallback::Grid);
  CHECK(r.searchRegion == IndexSet{0, 1});

  // Objective ROI disjoint from constraint ROI: constraint fallback. The
  // previous threshold 10 exceeds every ucb_f.
  t.functions = {fb({5, 1}, {4, 0}), fb({2, 1}, {1, -1})};
  r = buildRegions(t, {0.0}, 10.0);
  CHECK(r.roiCombined.empty());
  CHECK(r.fallback == RoiFallback::Constraints);
  CHECK(r.searchRegion == IndexSet{0, 1});
}

TEST_CASE("buildRegions: the objective threshold is a running maximum") {
  BoundsTable t;
  t.functions = {fb({5, 1}, {2, 0}), fb({2, 1}, {1, -1})};
  CHECK(buildRegions(t, {0.0}, 3.0).lcbFMax == 3.0);
  CHECK(buildRegions(t, {0.0}, 1.0).lcbFMax == 2.0);
}

TEST_CASE("regions: set identities and agreement with the set-builder oracle") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> n01;
  for (int rep = 0; rep < 200; ++rep) {
    const int N = 30, K = 1 + rep % 3;
    BoundsTable t;
    std::vector<Eigen::VectorXd> ucb, lcb;
    std::vector<double> h(static_cast<std::size_t>(K), 0.0);
    for (int g = 0; g <= K; ++g) {
      FunctionBounds b;
      b.ucb.resize(N);
      b.lcb.resize(N);
      for (int i = 0; i < N; ++i) {
        const double m = n01(rng), w = std::abs(n01(rng));
        b.lcb(i) = m - w;
        b.ucb(i) = m + w;
      }
      t.functions.push_back(b);
      ucb.push_back(b.ucb);
      lcb.push_back(b.lcb);
    }
    const auto got = buildRegions(t, h);
    const auto want = oracle::regions(ucb, lcb, h);
    for (int k = 0; k < K; ++k) {
      const auto& ls = got.constraints[static_cast<std::size_t>(k)];
      CHECK(ls.superlevel == want.S[static_cast<std::size_t>(k)]);
      CHECK(ls.sublevel == want.L[static_cast<std::size_t>(k)]);
      CHECK(ls.undecided == want.U[static_cast<std::size_t>(k)]);
      CHECK(ls.superlevel.size() + ls.sublevel.size() + ls.undecided.size() == static_cast<std::size_t>(N));
      CHECK(intersect(ls.superlevel, ls.undecided).empty());
      CHECK(intersect(ls.superlevel, ls.sublevel).empty());
      CHECK(intersect(ls.sublevel, ls.undecided).empty());
    }
    CHECK(got.lcbFMax == want.lcbFMax);
    CHECK(got.roiConstraints == want.roiC);
    CHECK(got.roiObjective == want.roiF);
    CHECK(got.roiCombined == want.roi);
    CHECK(got.roiCombined == intersect(got.roiObjective, got.roiConstraints));
  }
}

TEST_CASE("regions: shrinkage under nested bounds and a running-max threshold") {
  std::mt19937_64 rng(19);
  std::normal_distribution<double> n01;
  const int N = 50;
  Eigen::VectorXd truthF(N), truthC(N);
  for (int i = 0; i < N; ++i) {
    truthF(i) = n01(rng);
    truthC(i) = n01(rng);
  }
  BoundsTable prev;
  RegionPartition prevR;
  double lcbFMax = -std::numeric_limits<double>::infinity();
  for (int t = 1; t <= 40; ++t) {
    BoundsTable raw;
    for (const Eigen::VectorXd* truth : {&truthF, &truthC}) {
      FunctionBounds b;
      b.ucb = truth->array() + 3.0 / std::sqrt(t) + 0.1 * n01(rng) / t;
      b.lcb = truth->array() - 3.0 / std::sqrt(t) + 0.1 * n01(rng) / t;
      raw.functions.push_back(b);
    }
    const BoundsTable cur = t == 1 ? raw : enforceMonotone(prev, raw);
    const auto r = buildRegions(cur, {0.0}, lcbFMax);
    if (t > 1) {
      CHECK(isSubset(r.roiCombined, prevR.roiCombined));
      CHECK(isSubset(r.constraints[0].undecided, prevR.constraints[0].undecided));
    }
    lcbFMax = r.lcbFMax;
    prev = cur;
    prevR = r;
  }
}

TEST_CASE("set helpers") {
  CHECK(intersect({1, 3, 5}, {3, 4, 5}) == IndexSet{3, 5});
  CHECK(isSubset({3, 5}, {1, 3, 5}));
  CHECK_FALSE(isSubset({2}, {1, 3}));
  CHECK(contains({1, 4}, 4));
  CHECK(fullSet(3) == IndexSet{0, 1, 2});
}
