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

// Representative fractional perfect matchings of K_{n,n}.
//
// Starting from the uniform weighting w = 1/n, weight is pushed around
// fundamental cycles of the fractional subgraph. Any k+1 cycle vectors
// u_C = sum_j sign_j h(e_j) are linearly dependent in R^k; moving along a
// null-space combination keeps every vertex sum and the weighted label sum
// fixed while driving at least one fractional edge to 0 or 1. Iterating until
// fewer than k+1 fundamental cycles remain leaves a fractional subgraph of
// cyclomatic number at most k.

#ifndef BALREP_RELAX_H_
#define BALREP_RELAX_H_

#include <gmpxx.h>

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "balrep/core.h"

namespace balrep {

enum class NumericMode {
  kAuto,      // kRational for colour-backed instances, else kFloat.
  kFloat,
  kRational,
};

struct FractionalMatching {
  int n = 0;
  std::vector<double> weights;  // Indexed like BipartiteInstance labels.
  // Populated in rational mode; `weights` then holds the rounded values.
  std::vector<mpq_class> exact_weights;
  Label target;  // h(K_{n,n}) / n.
  bool exact = false;
  int pivots = 0;

  bool IsFractional(std::size_t e) const;
  std::vector<std::size_t> FractionalEdges() const;
};

// An edge of a subgraph of K_{n,n}, with left endpoint in [0, n) and right
// endpoint in [0, n).
struct SubgraphEdge {
  std::size_t id = 0;
  int left = 0;
  int right = 0;
};

struct CycleEdge {
  std::size_t id = 0;
  int sign = 0;  // +1 on even positions counted from the closing edge.
};

struct Cycle {
  std::size_t closing_edge = 0;
  std::vector<CycleEdge> edges;  // edges[0] is the closing edge.
};

struct CycleBasis {
  std::vector<std::size_t> forest;
  std::vector<Cycle> cycles;
};

// Spanning forest grown in edge order; each later edge closing a cycle yields
// its fundamental cycle. Stops after `max_cycles` cycles, in which case the
// forest is only the prefix built so far.
CycleBasis FundamentalCycleBasis(
    int n, std::span<const SubgraphEdge> edges,
    std::size_t max_cycles = std::numeric_limits<std::size_t>::max());

// |E| - |V| + #components over the vertices touched by `edges`.
int CyclomaticNumber(int n, std::span<const SubgraphEdge> edges);

FractionalMatching InitUniform(const BipartiteInstance& instance,
                               NumericMode mode = NumericMode::kAuto);

// The fractional subgraph of `fm` as a list of SubgraphEdges.
std::vector<SubgraphEdge> FractionalSubgraph(const FractionalMatching& fm);

enum class PivotOutcome { kApplied, kTooFewCycles };

// One cycle-space move using the first k+1 cycles of `basis`.
PivotOutcome PivotStep(const BipartiteInstance& instance,
                       FractionalMatching& fm, const CycleBasis& basis);

struct RelaxOptions {
  NumericMode mode = NumericMode::kAuto;
  // Float mode: weights this close to 0 or 1 are snapped.
  double snap_tolerance = 1e-9;
  // Float mode: final vertex-sum / target drift that aborts the solve.
  double drift_limit = 1e-6;
};

FractionalMatching Relax(const BipartiteInstance& instance,
                         const RelaxOptions& options = {});

struct RelaxReport {
  double max_vertex_error = 0.0;  // max_v |sum_{e ni v} w(e) - 1|
  double target_error = 0.0;      // || sum_e w(e) h(e) - target ||_1
  bool in_box = true;
  int cyclomatic = 0;
  std::size_t fractional_edges = 0;
};

// Recomputes every FractionalMatching invariant from scratch. In rational
// mode the errors are exact (0 means exactly satisfied).
RelaxReport CheckFractionalMatching(const BipartiteInstance& instance,
                                    const FractionalMatching& fm);

}  // namespace balrep

#endif  // BALREP_RELAX_H_
