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


#include "balrep/io.h"

#include <random>

#include "balrep/generate.h"
#include "gtest/gtest.h"

namespace balrep {
namespace {

template <typename T>
const T& As(const AnyInstance& a) {
  return std::get<T>(a);
}

void ExpectSameLabels(const EdgeLabels& a, const EdgeLabels& b) {
  ASSERT_EQ(a.size(), b.size());
  ASSERT_EQ(a.k(), b.k());
  for (std::size_t e = 0; e < a.size(); ++e) {
    for (int i = 0; i < a.k(); ++i) EXPECT_DOUBLE_EQ(a[e][i], b[e][i]);
  }
}

TEST(IoTest, CompleteRoundTrip) {
  std::mt19937_64 rng(1);
  const CompleteInstance inst = RandomBalancedComplete(7, 3, rng, true);
  const Json j = InstanceToJson(inst);
  EXPECT_EQ(j["type"], "complete");
  const AnyInstance back = InstanceFromJson(Json::parse(j.dump()));
  ExpectSameLabels(As<CompleteInstance>(back).labels(), inst.labels());
  EXPECT_TRUE(As<CompleteInstance>(back).labels().has_colours());
}

TEST(IoTest, BipartiteVectorRoundTrip) {
  std::mt19937_64 rng(2);
  const BipartiteInstance inst(4, RandomVectorLabels(16, 3, rng));
  const AnyInstance back = InstanceFromJson(Json::parse(InstanceToJson(inst).dump()));
  ExpectSameLabels(As<BipartiteInstance>(back).labels(), inst.labels());
  EXPECT_FALSE(As<BipartiteInstance>(back).labels().has_colours());
}

TEST(IoTest, HypergraphRoundTrip) {
  std::mt19937_64 rng(3);
  const HypergraphInstance inst = RandomBalancedHypergraph(3, 2, 2, rng, true);
  const AnyInstance back = InstanceFromJson(Json::parse(InstanceToJson(inst).dump()));
  EXPECT_EQ(As<HypergraphInstance>(back).r(), 3);
  ExpectSameLabels(As<HypergraphInstance>(back).labels(), inst.labels());
}

TEST(IoTest, BipartiteUsesGlobalRightIds) {
  const Json j = Json::parse(R"({"type":"bipartite","n":1,"k":1,
      "edges":[[0,1]],"colours":[1]})");
  EXPECT_EQ(As<BipartiteInstance>(InstanceFromJson(j)).n(), 1);
  const Json bad = Json::parse(R"({"type":"bipartite","n":1,"k":1,
      "edges":[[0,0]],"colours":[1]})");
  EXPECT_THROW(InstanceFromJson(bad), InvalidInstanceError);
}

TEST(IoTest, MetaIsIgnored) {
  const Json j = Json::parse(R"({"type":"complete","n":2,"k":2,
      "edges":[[0,1]],"colours":[2],"meta":{"family":"x"}})");
  EXPECT_NO_THROW(InstanceFromJson(j));
}

TEST(IoTest, SchemaErrors) {
  const char* cases[] = {
      R"([])",
      R"({"n":2,"k":1,"edges":[[0,1]],"colours":[1]})",
      R"({"type":"nope","n":2,"k":1,"edges":[[0,1]],"colours":[1]})",
      R"({"type":"complete","n":3,"k":1,"edges":[[0,1]],"colours":[1]})",
      R"({"type":"complete","n":2,"k":1,"edges":[[0,1]],"colours":[2]})",
      R"({"type":"complete","n":2,"k":1,"edges":[[0,0]],"colours":[1]})",
      R"({"type":"complete","n":2,"k":1,"edges":[[0,1]],"colours":[1],"labels":[[1]]})",
      R"({"type":"complete","n":2,"k":2,"edges":[[0,1]],"labels":[[1]]})",
      R"({"type":"complete","n":2,"k":0,"edges":[[0,1]],"colours":[1]})",
  };
  for (const char* c : cases) {
    EXPECT_THROW(InstanceFromJson(Json::parse(c)), InvalidInstanceError) << c;
  }
}

TEST(IoTest, PathAndPatternRoundTrip) {
  PathInstance path;
  path.alpha = 0.25;
  path.labels = {{0.1, -0.2}, {0.3, 0.0}};
  int k = 0;
  const PathInstance back = PathFromJson(PathToJson(path, 2), &k);
  EXPECT_EQ(k, 2);
  EXPECT_EQ(back.labels, path.labels);
  EXPECT_DOUBLE_EQ(back.alpha, 0.25);
  const PatternGraph c = PatternGraph::Cycle(5);
  EXPECT_EQ(PatternFromJson(PatternToJson(c)).edges(), c.edges());
}

TEST(IoTest, MatchingRoundTrip) {
  Matching m;
  m.edges = {{0, 3}, {1, 2}};
  EXPECT_EQ(MatchingFromJson(MatchingToJson(m)).edges, m.edges);
  EXPECT_THROW(MatchingFromJson(Json::parse("{}")), InvalidInstanceError);
}

TEST(IoTest, LedgerHasTotal) {
  Ledger l;
  l.relax = 1;
  l.completion = 2;
  EXPECT_DOUBLE_EQ(LedgerToJson(l)["total"].get<double>(), 3.0);
}

}  // namespace
}  // namespace balrep
