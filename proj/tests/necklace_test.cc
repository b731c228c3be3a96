// Copyright 2026 The Authors.
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


#include "balrep/necklace.h"

#include <cmath>
#include <functional>
#include <random>

#include "brute.h"
#include "gtest/gtest.h"

namespace balrep {
namespace {

PathInstance RandomPath(int n, int k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PathInstance path;
  path.alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  for (int j = 1; j < n; ++j) {
    Label h(k);
    double norm = 0;
    for (double& x : h) {
      x = u(rng);
      norm += std::abs(x);
    }
    if (norm > 1) {
      for (double& x : h) x /= norm;
    }
    path.labels.push_back(std::move(h));
  }
  return path;
}

TEST(SelectedEdgesTest, NoCutsInsideTakesOddEdges) {
  const std::vector<int> e = SelectedEdges({{}, true}, 7);
  EXPECT_EQ(e, (std::vector<int>{1, 3, 5}));
  EXPECT_EQ(SelectedEdges({{}, false}, 7), (std::vector<int>{2, 4, 6}));
}

TEST(SelectedEdgesTest, ConflictDropsTheLaterEdge) {
  // Cut at 1 while inside: edge 1 is taken, outside starts at edge 2 which
  // shares vertex 1 and is dropped.
  const std::vector<int> e = SelectedEdges({{1}, true}, 6);
  EXPECT_EQ(e, (std::vector<int>{1, 4}));
  for (std::size_t i = 1; i < e.size(); ++i) EXPECT_GE(e[i] - e[i - 1], 2);
}

TEST(SelectedEdgesTest, RejectsBadCuts) {
  EXPECT_THROW(SelectedEdges({{2, 3}, true}, 8), InvalidInstanceError);
  EXPECT_THROW(SelectedEdges({{0}, true}, 8), InvalidInstanceError);
  EXPECT_THROW(SelectedEdges({{7}, true}, 8), InvalidInstanceError);
}

TEST(SplitPathTest, PostconditionsOnRandomPaths) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 1 + trial % 4;
    const int n = 10 + static_cast<int>(rng() % 300);
    const PathInstance path = RandomPath(n, k, rng);
    SplitOptions opt;
    opt.seed = trial;
    const SplitResult r = SplitPath(path, k, opt);
    EXPECT_TRUE(r.bound_met);
    EXPECT_LE(r.deviation, 4.0 * k + 2);
    EXPECT_GE(static_cast<double>(r.edges.size()), n / 2.0 - (2 * k + 1));
    EXPECT_LE(static_cast<int>(r.split.cut_points.size()), CutBudget(k));
    EXPECT_NEAR(SplitDeviation(path, r.edges), r.deviation, 1e-9);
    EXPECT_EQ(SelectedEdges(r.split, n), r.edges);
  }
}

TEST(SplitPathTest, OracleMatchesIndependentEnumeration) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 12; ++trial) {
    const int k = 1 + trial % 2;
    const int n = 6 + trial % 6;
    const PathInstance path = RandomPath(n, k, rng);
    const SplitResult oracle = ExhaustiveSplitOracle(path, k);
    EXPECT_NEAR(oracle.deviation, brute::SplitMinimum(path, CutBudget(k)), 1e-9);
    const SplitResult heuristic = SplitPath(path, k);
    EXPECT_GE(heuristic.deviation, oracle.deviation - 1e-9);
  }
}

TEST(SplitPathTest, OracleBudgetIsEnforced) {
  std::mt19937_64 rng(1);
  const PathInstance path = RandomPath(kMaxOraclePathVertices + 1, 1, rng);
  EXPECT_THROW(ExhaustiveSplitOracle(path, 1), BudgetExceededError);
}

TEST(SplitPathTest, ValidateRejectsBadInput) {
  PathInstance path;
  path.alpha = 1.5;
  path.labels = {{0.1}, {0.2}};
  EXPECT_THROW(path.Validate(1), InvalidInstanceError);
  path.alpha = 0.5;
  path.labels = {{2.0}, {0.2}};
  EXPECT_THROW(path.Validate(1), InvalidInstanceError);
}

}  // namespace
}  // namespace balrep
