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


#include "balrep/embed.h"

#include <cmath>
#include <random>
#include <set>

#include "balrep/generate.h"
#include "brute.h"
#include "gtest/gtest.h"

namespace balrep {
namespace {

double EmbeddedF(const CompleteInstance& host, const PatternGraph& pattern,
                 const std::vector<int>& map) {
  std::vector<std::vector<int>> pairs;
  for (const Edge& e : pattern.edges()) pairs.push_back({map[e.u], map[e.v]});
  return brute::CompleteF(host, pairs);
}

PatternGraph TriangleFactor(int n) {
  return PatternGraph::Factor(PatternGraph::Cycle(3), n / 3);
}

TEST(PatternGraphTest, RejectsBadEdges) {
  EXPECT_THROW(PatternGraph(3, {{0, 0}}), InvalidInstanceError);
  EXPECT_THROW(PatternGraph(3, {{0, 1}, {1, 0}}), InvalidInstanceError);
  EXPECT_THROW(PatternGraph(3, {{0, 3}}), InvalidInstanceError);
}

TEST(PatternGraphTest, Basics) {
  const PatternGraph c = PatternGraph::Cycle(5);
  EXPECT_EQ(c.edges().size(), 5u);
  EXPECT_EQ(c.max_degree(), 2);
  EXPECT_FALSE(c.IsAcyclic());
  EXPECT_TRUE(PatternGraph::Path(5).IsAcyclic());
  const PatternGraph f = TriangleFactor(9);
  EXPECT_EQ(f.Components().size(), 3u);
  EXPECT_TRUE(f.HasEdge(3, 5));
  EXPECT_FALSE(f.HasEdge(2, 3));
}

TEST(ClassifyPatternTest, Kinds) {
  EXPECT_EQ(ClassifyPattern(PatternGraph::Path(20)).kind, PatternKind::kForest);
  const PatternClass f = ClassifyPattern(TriangleFactor(12));
  EXPECT_EQ(f.kind, PatternKind::kFactor);
  EXPECT_EQ(f.copies.size(), 4u);
  EXPECT_EQ(f.factor.n(), 3);
  EXPECT_EQ(ClassifyPattern(PatternGraph::Cycle(20)).kind,
            PatternKind::kBoundedDegree);
  // Triangle plus a 4-cycle: components are not isomorphic.
  const PatternGraph odd(7, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {5, 6},
                             {3, 6}});
  EXPECT_EQ(ClassifyPattern(odd).kind, PatternKind::kBoundedDegree);
}

TEST(PartitionTest, FactorCertificate) {
  const PatternGraph f = TriangleFactor(18);
  const PatternClass cls = ClassifyPattern(f);
  const UniformPartition p = FactorPartition(cls.factor, cls.copies);
  EXPECT_EQ(p.r, 3);
  const PartitionCheck check = ValidatePartition(f, p);
  EXPECT_TRUE(check.ok());
  for (const auto& part : p.parts) EXPECT_EQ(part.size(), 6u);
}

TEST(PartitionTest, BoundedDegreeColouring) {
  std::mt19937_64 rng(4);
  const PatternGraph g = RandomCubicPattern(60, rng);
  std::mt19937_64 srng(9);
  const BoundedDegreeSample s = BoundedDegreePartition(g, srng);
  EXPECT_EQ(s.partition.r, 9);
  EXPECT_TRUE(ValidatePartition(g, s.partition).ok());
  for (const Edge& e : g.edges()) {
    EXPECT_NE(s.colouring[e.u], s.colouring[e.v]);
  }
  EXPECT_TRUE(ColouringWithinBounds(g, s.colouring, 9));
}

TEST(PartitionTest, ForestDeletionBalances) {
  for (int n : {20, 50, 200}) {
    const PatternGraph path = PatternGraph::Path(n);
    const ForestDeletion d = ForestBalancedDeletion(path, 3);
    EXPECT_TRUE(d.bound_met);
    int zeros = 0, ones = 0;
    for (int v = 0; v < n; ++v) {
      if (d.colouring[v] == 0) ++zeros;
      if (d.colouring[v] == 1) ++ones;
    }
    EXPECT_EQ(zeros + ones + static_cast<int>(d.removed.size()), n);
    const double half = (n - static_cast<double>(d.removed.size())) / 2;
    EXPECT_LE(std::abs(zeros - half), n / 8.0 + 1e-9);
    std::set<int> removed(d.removed.begin(), d.removed.end());
    for (const Edge& e : path.edges()) {
      if (removed.count(e.u) || removed.count(e.v)) continue;
      EXPECT_NE(d.colouring[e.u], d.colouring[e.v]);
    }
  }
}

TEST(PartitionTest, ForestPartitionValid) {
  for (int n : {10, 40, 300}) {
    const PatternGraph path = PatternGraph::Path(n);
    EXPECT_TRUE(ValidatePartition(path, ForestPartition(path)).ok()) << n;
  }
}

TEST(EmbedSpanningTest, ValidCopiesWithinLedger) {
  std::mt19937_64 rng(12);
  struct Case {
    PatternGraph pattern;
    PatternKind kind;
  };
  std::mt19937_64 crng(3);
  const std::vector<Case> cases = {
      {PatternGraph::Path(30), PatternKind::kForest},
      {TriangleFactor(24), PatternKind::kFactor},
      {RandomCubicPattern(30, crng), PatternKind::kBoundedDegree},
  };
  for (const Case& c : cases) {
    for (int k : {2, 3}) {
      const int n = c.pattern.n();
      const CompleteInstance host = RandomBalancedComplete(n, k, rng, true);
      EmbedOptions opt;
      opt.seed = 7;
      const SpanningEmbedding emb = EmbedSpanning(host, c.pattern, opt);
      EXPECT_EQ(emb.kind, c.kind);
      ASSERT_TRUE(IsValidEmbedding(c.pattern, emb.embedding.map, n));
      const double f = EmbeddedF(host, c.pattern, emb.embedding.map);
      EXPECT_NEAR(emb.report.total_l1, f, 1e-9);
      EXPECT_LE(f, emb.ledger.Total() + 1e-6);
    }
  }
}

TEST(EmbedSpanningTest, SizeMismatchThrows) {
  std::mt19937_64 rng(1);
  const CompleteInstance host = RandomBalancedComplete(10, 2, rng, true);
  EXPECT_THROW(EmbedSpanning(host, PatternGraph::Path(9)), InvalidInstanceError);
}

TEST(IsValidEmbeddingTest, Injective) {
  const PatternGraph p = PatternGraph::Path(3);
  EXPECT_TRUE(IsValidEmbedding(p, {2, 0, 1}, 3));
  EXPECT_FALSE(IsValidEmbedding(p, {0, 0, 1}, 3));
  EXPECT_FALSE(IsValidEmbedding(p, {0, 1, 3}, 3));
}

}  // namespace
}  // namespace balrep
