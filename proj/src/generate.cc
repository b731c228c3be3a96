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


#include "balrep/generate.h"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace balrep {

std::vector<int> BalancedColours(std::size_t m, int k, std::mt19937_64& rng,
                                 bool allow_near) {
  if (k < 1) throw InvalidInstanceError("need k >= 1");
  if (m % k != 0 && !allow_near) {
    std::ostringstream msg;
    msg << k << " colours do not divide " << m << " edges";
    throw InvalidInstanceError(msg.str());
  }
  std::vector<int> colours(m);
  for (std::size_t e = 0; e < m; ++e) colours[e] = 1 + static_cast<int>(e % k);
  std::shuffle(colours.begin(), colours.end(), rng);
  return colours;
}

EdgeLabels RandomVectorLabels(std::size_t m, int k, std::mt19937_64& rng) {
  if (k < 1) throw InvalidInstanceError("need k >= 1");
  EdgeLabels labels(k, m);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t e = 0; e < m; ++e) {
    for (double& x : labels.Mutable(e)) x = unit(rng);
  }
  return labels;
}

CompleteInstance RandomBalancedComplete(int n_vertices, int k,
                                        std::mt19937_64& rng,
                                        bool allow_near) {
  if (n_vertices < 2) throw InvalidInstanceError("need at least 2 vertices");
  return CompleteInstance::FromColours(
      n_vertices, BalancedColours(Binomial(n_vertices, 2), k, rng, allow_near),
      k);
}

BipartiteInstance RandomBalancedBipartite(int n, int k, std::mt19937_64& rng,
                                          bool allow_near) {
  if (n < 1) throw InvalidInstanceError("need n >= 1");
  return BipartiteInstance::FromColours(
      n, BalancedColours(static_cast<std::size_t>(n) * n, k, rng, allow_near),
      k);
}

HypergraphInstance RandomBalancedHypergraph(int r, int n, int k,
                                            std::mt19937_64& rng,
                                            bool allow_near) {
  if (r < 2 || n < 1) throw InvalidInstanceError("need r >= 2 and n >= 1");
  return HypergraphInstance(
      r, n,
      EdgeLabels::FromColours(
          BalancedColours(Binomial(r * n, r), k, rng, allow_near), k));
}

PatternGraph RandomCubicPattern(int n, std::mt19937_64& rng) {
  if (n < 6 || n % 2 != 0) {
    throw InvalidInstanceError("cubic patterns need an even n >= 6");
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> edges;
    for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    bool ok = true;
    for (int i = 0; i < n && ok; i += 2) {
      const int d = std::abs(perm[i] - perm[i + 1]);
      ok = d != 1 && d != n - 1;
      edges.emplace_back(perm[i], perm[i + 1]);
    }
    if (ok) return PatternGraph(n, std::move(edges));
  }
  throw RetryExhaustedError("no chord matching avoided the cycle");
}

}  // namespace balrep
