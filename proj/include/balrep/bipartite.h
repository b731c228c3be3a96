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

// Near-representative perfect matchings of K_{n,n}.
//
// Pipeline: normalize labels, relax to a fractional perfect matching whose
// fractional part has cyclomatic number at most k, cut that part into
// alternating-weight paths, round each path, and complete the leftover
// vertices arbitrarily.

#ifndef BALREP_BIPARTITE_H_
#define BALREP_BIPARTITE_H_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "balrep/core.h"
#include "balrep/necklace.h"
#include "balrep/relax.h"

namespace balrep {

// Vertices of K_{n,n} in a decomposition: left l is l, right r is n + r.
struct PathComponent {
  std::vector<int> vertices;
  std::vector<std::size_t> edge_ids;  // edge_ids[j-1] joins vertices j-1, j.
  PathInstance path;                  // Normalized labels along the path.
};

struct PathDecomposition {
  std::vector<std::size_t> integral_matching;  // Weight-1 edges.
  std::vector<PathComponent> paths;
  std::vector<std::pair<std::size_t, double>> deleted_edges;
  int high_degree_deletions = 0;
  int cycle_deletions = 0;
};

// Prunes the fractional subgraph of `fm` to vertex-disjoint alternating
// paths. `normalized` supplies the path labels and must index edges like the
// instance `fm` was computed on.
PathDecomposition Decompose(const EdgeLabels& normalized,
                            const FractionalMatching& fm);

// Error budget of one solve, in the instance's label units. The terms bound
// the measured imbalance from above.
struct Ledger {
  double relax = 0.0;       // Fractional target drift (0 in rational mode).
  double necklace = 0.0;    // Summed path rounding deviations.
  double deleted = 0.0;     // Weight of edges removed by Decompose.
  double partition = 0.0;   // Partition step of a reduction, if any.
  double completion = 0.0;  // Edges added to complete the matching.

  double Total() const {
    return relax + necklace + deleted + partition + completion;
  }
  Ledger& operator+=(const Ledger& other);
};

struct BipartiteOptions {
  RelaxOptions relax;
  std::uint64_t seed = 0;  // Path rounding seed.
};

struct BipartiteSolution {
  Matching matching;  // (left, right) pairs sorted by left.
  ImbalanceReport report;
  Ledger ledger;
  FractionalMatching fractional;
  PathDecomposition decomposition;
  std::vector<double> path_deviations;
  int completion_edges = 0;
};

BipartiteSolution SolveBipartite(const BipartiteInstance& instance,
                                 const BipartiteOptions& options = {});

}  // namespace balrep

#endif  // BALREP_BIPARTITE_H_
