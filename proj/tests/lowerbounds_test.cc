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


#include "balrep/lowerbounds.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "balrep/oracle.h"
#include "gtest/gtest.h"

namespace balrep {
namespace {

Matching RandomCompletePm(int n, std::mt19937_64& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  Matching m;
  for (int i = 0; i < n; i += 2) {
    m.edges.push_back({std::min(p[i], p[i + 1]), std::max(p[i], p[i + 1])});
  }
  return m;
}

Matching RandomBipartitePm(int n, std::mt19937_64& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  Matching m;
  for (int l = 0; l < n; ++l) m.edges.push_back({l, p[l]});
  return m;
}

void ExpectBalanced(const EdgeLabels& labels, int k) {
  std::vector<std::int64_t> count(k + 1, 0);
  for (std::size_t e = 0; e < labels.size(); ++e) ++count[labels.colour(e)];
  for (int c = 2; c <= k; ++c) EXPECT_EQ(count[c], count[1]) << c;
}

TEST(GenKnTest, BalancedAndConsistent) {
  for (int k = 3; k <= 7; ++k) {
    for (int t = 1; t <= 3; ++t) {
      const GeneratedComplete g = GenKn(k, t);
      const int n = g.instance.n_vertices();
      EXPECT_EQ(n, 2 * k * t);
      EXPECT_EQ(g.instance.k(), k);
      ExpectBalanced(g.instance.labels(), k);
      EXPECT_TRUE(IsColourBalanced(g.instance.labels()));
      int total = 0;
      for (int b = 1; b <= k; ++b) total += g.spec.BlockSize(b);
      EXPECT_EQ(total, n);
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          EXPECT_EQ(SpecColour(g.spec, u, v),
                    g.instance.labels().colour(g.instance.index(u, v)));
        }
      }
    }
  }
}

TEST(GenKnTest, ResidueInvariantOnRandomMatchings) {
  std::mt19937_64 rng(8);
  for (int k = 3; k <= 6; ++k) {
    for (int t = 1; t <= 2; ++t) {
      const GeneratedComplete g = GenKn(k, t);
      const int n = g.instance.n_vertices();
      EXPECT_EQ(VerifyModInvariant(g.spec, RandomCompletePm(n, rng)).balanced_residue,
                t * k * (k + 1) / 2 % k);
      for (int trial = 0; trial < 200; ++trial) {
        const Matching m = RandomCompletePm(n, rng);
        const ResidueReport r = VerifyModInvariant(g.spec, m);
        int direct = 0;
        for (const auto& e : m.edges) {
          direct += g.instance.labels().colour(g.instance.index(e[0], e[1]));
        }
        EXPECT_EQ(r.direct, direct % k);
        EXPECT_TRUE(r.agree);
        EXPECT_EQ(r.formula, r.direct);
        EXPECT_NE(std::find(r.attainable.begin(), r.attainable.end(), r.direct),
                  r.attainable.end());
        EXPECT_FALSE(r.balanced_attainable);
      }
    }
  }
}

TEST(GenKnTest, NoBalancedMatchingOnSmallCases) {
  for (auto [k, t] : {std::pair{3, 1}, {4, 1}, {5, 1}, {6, 1}, {3, 2}}) {
    const GeneratedComplete g = GenKn(k, t);
    EXPECT_FALSE(HasBalancedPm(g.instance)) << k << "," << t;
    EXPECT_GE(MinImbalancePm(g.instance).f, 2.0 - 1e-9);
  }
}

TEST(GenKnnModularTest, BalancedResidueAndNoBalancedMatching) {
  std::mt19937_64 rng(9);
  for (int k = 2; k <= 5; ++k) {
    for (int t = 1; t <= 3; ++t) {
      const GeneratedBipartite g = GenKnnModular(k, t);
      const int n = g.instance.n();
      EXPECT_EQ(n, k * t);
      ExpectBalanced(g.instance.labels(), k);
      for (int l = 0; l < n; ++l) {
        for (int r = 0; r < n; ++r) {
          EXPECT_EQ(SpecColour(g.spec, l, r),
                    g.instance.labels().colour(g.instance.index(l, r)));
        }
      }
      for (int trial = 0; trial < 100; ++trial) {
        const ResidueReport rep =
            VerifyModInvariant(g.spec, RandomBipartitePm(n, rng));
        EXPECT_TRUE(rep.agree);
        EXPECT_FALSE(rep.balanced_attainable);
      }
      if (n <= 8) {
        EXPECT_FALSE(HasBalancedPm(g.instance));
      }
    }
  }
}

TEST(GenKnnSqrtTest, BalancedAndLargeImbalance) {
  for (int m = 1; m <= 2; ++m) {
    const GeneratedBipartite g = GenKnnSqrt(m, 1);
    EXPECT_EQ(g.instance.k(), 2 * m * m);
    ExpectBalanced(g.instance.labels(), 2 * m * m);
    if (g.instance.n() <= 8) {
      EXPECT_GE(MinImbalancePm(g.instance).f, 2.0 - 1e-9);
    }
  }
  const GeneratedBipartite g = GenKnnSqrt(3, 1);
  EXPECT_EQ(g.instance.k(), 18);
  ExpectBalanced(g.instance.labels(), 18);
  std::mt19937_64 rng(1);
  EXPECT_THROW(VerifyModInvariant(g.spec, RandomBipartitePm(g.instance.n(), rng)),
               InvalidInstanceError);
}

TEST(GeneratorsTest, RejectBadParameters) {
  EXPECT_THROW(GenKn(2, 1), InvalidInstanceError);
  EXPECT_THROW(GenKnnModular(1, 1), InvalidInstanceError);
  EXPECT_THROW(GenKnnSqrt(0, 1), InvalidInstanceError);
}

}  // namespace
}  // namespace balrep
