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


#include "balrep/core.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gtest/gtest.h"

namespace balrep {
namespace {

TEST(EdgeLabelsTest, ColoursBecomeBasisVectors) {
  const EdgeLabels labels = EdgeLabels::FromColours({1}, 2);
  ASSERT_EQ(labels.size(), 1u);
  EXPECT_EQ(labels[0][0], 1.0);
  EXPECT_EQ(labels[0][1], 0.0);
}

TEST(EdgeLabelsTest, RejectsColourOutOfRange) {
  EXPECT_THROW(EdgeLabels::FromColours({0, 1}, 2), InvalidInstanceError);
  EXPECT_THROW(EdgeLabels::FromColours({3}, 2), InvalidInstanceError);
}

TEST(EdgeLabelsTest, K6ConstructionHasFivePerClass) {
  // Colouring from the block rule on parts {0}, {1,2}, {3,4,5} with one edge
  // of E(V2, V3) moved from colour 2 to colour 1.
  const int block[6] = {1, 2, 2, 3, 3, 3};
  std::vector<int> colours;
  for (int u = 0; u < 6; ++u) {
    for (int v = u + 1; v < 6; ++v) {
      int c = (block[u] + block[v]) % 3;
      if (c == 0) c = 3;
      if (u == 1 && v == 3) c = 1;
      colours.push_back(c);
    }
  }
  const EdgeLabels labels = EdgeLabels::FromColours(colours, 3);
  const Label sum = labels.Sum();
  EXPECT_EQ(labels.size(), 15u);
  for (double x : sum) EXPECT_EQ(x, 5.0);
}

TEST(PairIndexTest, RoundTrips) {
  const int n = 9;
  std::size_t expected = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      EXPECT_EQ(PairIndex(u, v, n), expected);
      EXPECT_EQ(PairIndex(v, u, n), expected);
      EXPECT_EQ(PairFromIndex(expected, n), Edge(u, v));
      ++expected;
    }
  }
}

TEST(NormalizeTest, ConstantLabelsVanish) {
  const EdgeLabels labels = EdgeLabels::FromRows({{2, 3}, {2, 3}, {2, 3}}, 2);
  const NormalizedLabels norm = Normalize(labels);
  for (std::size_t e = 0; e < 3; ++e) {
    EXPECT_EQ(norm.labels[e][0], 0.0);
    EXPECT_EQ(norm.labels[e][1], 0.0);
  }
}

TEST(NormalizeTest, BalancedTwoColouring) {
  const NormalizedLabels norm =
      Normalize(EdgeLabels::FromColours({1, 2, 1, 2, 2, 1}, 2));
  EXPECT_DOUBLE_EQ(norm.scale, 0.5);
  EXPECT_DOUBLE_EQ(norm.shift[0], 0.5);
  EXPECT_DOUBLE_EQ(norm.shift[1], 0.5);
}

TEST(NormalizeTest, RandomLabelsSumToZeroWithUnitNorms) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::vector<Label> rows(45, Label(3));
  for (auto& row : rows) {
    for (double& x : row) x = u(rng);
  }
  const NormalizedLabels norm = Normalize(EdgeLabels::FromRows(rows, 3));
  const Label sum = norm.labels.Sum();
  for (double x : sum) EXPECT_NEAR(x, 0.0, 1e-9 * 45);
  for (std::size_t e = 0; e < 45; ++e) {
    EXPECT_LE(L1Norm(norm.labels[e]), 1.0 + 1e-12);
  }
}

TEST(ImbalanceTest, MonochromaticHostIsZero) {
  const CompleteInstance inst =
      CompleteInstance::FromColours(4, std::vector<int>(6, 1), 1);
  const std::vector<Edge> pm = {{0, 1}, {2, 3}};
  EXPECT_EQ(Imbalance(inst, pm).total_l1, 0.0);
}

TEST(ImbalanceTest, DefinitionArithmeticOnK4) {
  // Three edges per colour; the matching {01, 23} takes colour 1 twice.
  std::vector<int> colours(6);
  colours[PairIndex(0, 1, 4)] = 1;
  colours[PairIndex(2, 3, 4)] = 1;
  colours[PairIndex(0, 2, 4)] = 1;
  colours[PairIndex(1, 3, 4)] = 2;
  colours[PairIndex(0, 3, 4)] = 2;
  colours[PairIndex(1, 2, 4)] = 2;
  const CompleteInstance inst = CompleteInstance::FromColours(4, colours, 2);
  const std::vector<Edge> pm = {{0, 1}, {2, 3}};
  const ImbalanceReport r = Imbalance(inst, pm);
  EXPECT_EQ(r.total_l1, 2.0);
  EXPECT_EQ(r.per_coordinate[0], 1.0);
  EXPECT_EQ(r.per_coordinate[1], -1.0);
}

TEST(ImbalanceTest, ShiftAndScaleInvariance) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = 8;
  std::vector<Label> rows(PairIndex(n - 2, n - 1, n) + 1, Label(3));
  for (auto& row : rows) {
    for (double& x : row) x = u(rng);
  }
  std::vector<Label> moved = rows;
  const double lambda = 2.5;
  const Label s = {0.3, -1.0, 7.0};
  for (auto& row : moved) {
    for (int i = 0; i < 3; ++i) row[i] = lambda * (row[i] + s[i]);
  }
  const CompleteInstance a(n, EdgeLabels::FromRows(rows, 3));
  const CompleteInstance b(n, EdgeLabels::FromRows(moved, 3));
  const std::vector<Edge> sub = {{0, 1}, {2, 3}, {4, 7}, {5, 6}, {1, 4}};
  EXPECT_NEAR(Imbalance(b, sub).total_l1, lambda * Imbalance(a, sub).total_l1,
              1e-9);
}

TEST(ImbalanceTest, PerfectMatchingParityIsEven) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 3, t = 2, n = 2 * k * t;
    std::vector<int> colours(PairIndex(n - 2, n - 1, n) + 1);
    for (std::size_t e = 0; e < colours.size(); ++e) colours[e] = 1 + e % k;
    std::shuffle(colours.begin(), colours.end(), rng);
    const CompleteInstance inst = CompleteInstance::FromColours(n, colours, k);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> pm;
    for (int i = 0; i < n; i += 2) pm.emplace_back(perm[i], perm[i + 1]);
    const double f = Imbalance(inst, pm).total_l1;
    EXPECT_EQ(std::fmod(f, 2.0), 0.0);
    // Direct colour count agrees.
    std::vector<int> count(k + 1, 0);
    for (const Edge& e : pm) ++count[inst.labels().colour(inst.index(e.u, e.v))];
    double direct = 0;
    for (int c = 1; c <= k; ++c) direct += std::abs(count[c] - t);
    EXPECT_EQ(f, direct);
  }
}

TEST(ImbalanceTest, EmptyHostThrows) {
  EXPECT_THROW(ImbalanceOfEdges(EdgeLabels(2, 0), {}), InvalidInstanceError);
}

TEST(MatchingTest, PerfectMatchingChecks) {
  EXPECT_TRUE(IsPerfectMatching({{{0, 1}, {2, 3}}}, 4));
  EXPECT_FALSE(IsPerfectMatching({{{0, 1}, {1, 3}}}, 4));
  EXPECT_FALSE(IsPerfectMatching({{{0, 1}}}, 4));
  EXPECT_TRUE(IsPerfectBipartiteMatching({{{0, 1}, {1, 0}}}, 2));
  EXPECT_FALSE(IsPerfectBipartiteMatching({{{0, 1}, {1, 1}}}, 2));
}

TEST(HypergraphTest, RankUnrankRoundTrip) {
  const int r = 3, v = 9;
  std::size_t count = 0;
  for (int a = 0; a < v; ++a) {
    for (int b = a + 1; b < v; ++b) {
      for (int c = b + 1; c < v; ++c) {
        const std::vector<int> t = {a, b, c};
        const std::size_t rank = HypergraphInstance::Rank(t);
        EXPECT_LT(rank, Binomial(v, r));
        EXPECT_EQ(HypergraphInstance::Unrank(rank, r), t);
        ++count;
      }
    }
  }
  EXPECT_EQ(count, Binomial(v, r));
}

}  // namespace
}  // namespace balrep
