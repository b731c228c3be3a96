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


#include "balrep/reduce.h"

#include <cmath>
#include <random>

#include "balrep/generate.h"
#include "brute.h"
#include "gtest/gtest.h"

namespace balrep {
namespace {

TEST(SplitCompleteTest, EquipartitionWithinThreshold) {
  std::mt19937_64 rng(3);
  const CompleteInstance inst = RandomBalancedComplete(40, 4, rng, true);
  std::mt19937_64 srng(1);
  const PartitionSample s = SplitComplete(inst, srng);
  EXPECT_EQ(s.Part(0).size(), 20u);
  EXPECT_EQ(s.Part(1).size(), 20u);
  EXPECT_NEAR(s.threshold, std::sqrt(2.0) * 20, 1e-9);
  EXPECT_LE(s.deviation_l2, s.threshold);
  const Label x = CrossingSum(inst, Normalize(inst.labels()).labels,
                              s.assignment);
  EXPECT_NEAR(L2Norm(x), s.deviation_l2, 1e-9);
  EXPECT_NEAR(L1Norm(x), s.deviation_l1, 1e-9);
}

TEST(SolveCompleteTest, PerfectAndBoundedByLedger) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 12; ++trial) {
    const int k = 2 + trial % 3;
    const int nv = 12 + 4 * trial;
    const CompleteInstance inst = RandomBalancedComplete(nv, k, rng, true);
    ReductionOptions opt;
    opt.seed = trial;
    const CompleteSolution sol = SolveComplete(inst, opt);
    ASSERT_TRUE(IsPerfectMatching(sol.matching, nv));
    const double f = brute::CompleteF(inst, sol.matching.edges);
    EXPECT_NEAR(sol.report.total_l1, f, 1e-9);
    EXPECT_LE(f, sol.ledger.Total() + 1e-6);
    EXPECT_LE(f, 10.0 * k * k);
  }
}

TEST(SolveCompleteTest, NeverBeatsExhaustiveMinimum) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 6; ++trial) {
    const CompleteInstance inst =
        RandomBalancedComplete(6 + 2 * (trial % 3), 3, rng, true);
    const CompleteSolution sol = SolveComplete(inst);
    EXPECT_GE(sol.report.total_l1, brute::MinCompletePm(inst) - 1e-9);
  }
}

TEST(SolveCompleteTest, BalancedK6) {
  // K_6 with 5 edges of each of 3 colours.
  std::vector<int> colours(15);
  for (int e = 0; e < 15; ++e) colours[e] = 1 + e % 3;
  const CompleteInstance inst = CompleteInstance::FromColours(6, colours, 3);
  const CompleteSolution sol = SolveComplete(inst);
  ASSERT_TRUE(IsPerfectMatching(sol.matching, 6));
  EXPECT_LE(sol.report.total_l1, 90.0);
}

TEST(SolveCompleteTest, RejectsOddVertexCount) {
  std::mt19937_64 rng(1);
  const CompleteInstance inst = RandomBalancedComplete(7, 3, rng, true);
  EXPECT_THROW(SolveComplete(inst), InvalidInstanceError);
}

TEST(SolveHypergraphTest, PerfectAndWithinBound) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 6; ++trial) {
    const int k = 2 + trial % 2;
    const int r = 3;
    const int n = 4 + trial;
    const HypergraphInstance inst = RandomBalancedHypergraph(r, n, k, rng, true);
    ReductionOptions opt;
    opt.seed = trial;
    const HypergraphSolution sol = SolveHypergraph(inst, opt);
    ASSERT_TRUE(IsPerfectMatching(sol.matching, r * n));
    for (const auto& e : sol.matching.edges) EXPECT_EQ(e.size(), 3u);
    const double f = brute::HypergraphF(inst, sol.matching);
    EXPECT_NEAR(sol.report.total_l1, f, 1e-9);
    EXPECT_LE(f, sol.ledger.Total() + 1e-6);
    EXPECT_LE(f, 10.0 * r * k * k);
  }
}

TEST(SolveHypergraphTest, SmallCaseAgainstExhaustive) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 4; ++trial) {
    const int k = 2;
    const HypergraphInstance inst = RandomBalancedHypergraph(3, 2, k, rng, true);
    const HypergraphSolution sol = SolveHypergraph(inst);
    const double best = brute::MinTriplePm(inst);
    EXPECT_GE(sol.report.total_l1, best - 1e-9);
    EXPECT_LE(sol.report.total_l1, best + 10.0 * 3 * k * k);
  }
}

TEST(SplitHypergraphTest, EqualParts) {
  std::mt19937_64 rng(11);
  const HypergraphInstance inst = RandomBalancedHypergraph(3, 5, 2, rng, true);
  std::mt19937_64 srng(2);
  const PartitionSample s = SplitHypergraph(inst, srng);
  for (int p = 0; p < 3; ++p) EXPECT_EQ(s.Part(p).size(), 5u);
  EXPECT_LE(s.deviation_l2, s.threshold);
  const Label x = TransversalSum(inst, Normalize(inst.labels()).labels,
                                 s.assignment);
  EXPECT_NEAR(L2Norm(x), s.deviation_l2, 1e-9);
}

}  // namespace
}  // namespace balrep
