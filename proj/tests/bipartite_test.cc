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


#include "balrep/bipartite.h"

#include <random>
#include <set>

#include "balrep/generate.h"
#include "brute.h"
#include "gtest/gtest.h"

namespace balrep {
namespace {

TEST(SolveBipartiteTest, MatchingIsPerfectAndLedgerBoundsF) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 2 + trial % 4;
    const int n = 8 + 4 * (trial % 5);
    const BipartiteInstance inst = RandomBalancedBipartite(n, k, rng, true);
    BipartiteOptions opt;
    opt.seed = trial;
    const BipartiteSolution sol = SolveBipartite(inst, opt);
    ASSERT_TRUE(IsPerfectBipartiteMatching(sol.matching, n));
    const double f = brute::BipartiteF(inst, sol.matching);
    EXPECT_NEAR(sol.report.total_l1, f, 1e-9);
    EXPECT_LE(f, sol.ledger.Total() + 1e-6);
    EXPECT_LE(f, 10.0 * k * k);
  }
}

TEST(SolveBipartiteTest, VectorLabelsFloatMode) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 6; ++trial) {
    const int k = 1 + trial;
    const int n = 12;
    const BipartiteInstance inst(n, RandomVectorLabels(n * n, k, rng));
    const BipartiteSolution sol = SolveBipartite(inst);
    ASSERT_TRUE(IsPerfectBipartiteMatching(sol.matching, n));
    const double f = brute::BipartiteF(inst, sol.matching);
    EXPECT_LE(f, sol.ledger.Total() + 1e-6);
  }
}

TEST(SolveBipartiteTest, NeverBeatsExhaustiveMinimum) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const int k = 2 + trial % 3;
    const int n = 4 + trial % 4;
    const BipartiteInstance inst = RandomBalancedBipartite(n, k, rng, true);
    const BipartiteSolution sol = SolveBipartite(inst);
    EXPECT_GE(sol.report.total_l1, brute::MinBipartitePm(inst) - 1e-9);
  }
}

TEST(SolveBipartiteTest, MonochromaticIsExact) {
  const int n = 6;
  const BipartiteInstance inst =
      BipartiteInstance::FromColours(n, std::vector<int>(n * n, 1), 3);
  const BipartiteSolution sol = SolveBipartite(inst);
  EXPECT_NEAR(sol.report.total_l1, 0.0, 1e-12);
}

TEST(SolveBipartiteTest, DeterministicForFixedSeed) {
  std::mt19937_64 rng(21);
  const BipartiteInstance inst = RandomBalancedBipartite(16, 4, rng, true);
  BipartiteOptions opt;
  opt.seed = 99;
  const BipartiteSolution a = SolveBipartite(inst, opt);
  const BipartiteSolution b = SolveBipartite(inst, opt);
  EXPECT_EQ(a.matching.edges, b.matching.edges);
}

TEST(DecomposeTest, PathsAreDisjointAndAlternating) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    const int k = 2 + trial % 4;
    const int n = 10 + 2 * trial;
    const BipartiteInstance inst = RandomBalancedBipartite(n, k, rng, true);
    const FractionalMatching fm = Relax(inst);
    const NormalizedLabels norm = Normalize(inst.labels());
    const PathDecomposition d = Decompose(norm.labels, fm);
    std::set<int> seen;
    for (std::size_t e : d.integral_matching) {
      EXPECT_NEAR(fm.weights[e], 1.0, 1e-9);
      EXPECT_TRUE(seen.insert(static_cast<int>(e / n)).second);
      EXPECT_TRUE(seen.insert(n + static_cast<int>(e % n)).second);
    }
    for (const PathComponent& p : d.paths) {
      ASSERT_EQ(p.vertices.size(), p.edge_ids.size() + 1);
      for (int v : p.vertices) EXPECT_TRUE(seen.insert(v).second);
      for (std::size_t j = 0; j < p.edge_ids.size(); ++j) {
        const std::size_t e = p.edge_ids[j];
        const int l = static_cast<int>(e / n), r = n + static_cast<int>(e % n);
        const int a = p.vertices[j], b = p.vertices[j + 1];
        EXPECT_TRUE((a == l && b == r) || (a == r && b == l));
        const double w = j % 2 == 0 ? p.path.alpha : 1 - p.path.alpha;
        EXPECT_NEAR(fm.weights[e], w, 1e-9);
      }
    }
  }
}

}  // namespace
}  // namespace balrep
