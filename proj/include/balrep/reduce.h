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

// Reductions from K_{2n} and K^{(r)}_{rn} to the bipartite solver.
//
// A random equipartition of the host is accepted once its crossing edges
// carry close to the average label mass; the matching is then found inside
// the complete bipartite (or r-partite) subgraph between the parts.

#ifndef BALREP_REDUCE_H_
#define BALREP_REDUCE_H_

#include <cstdint>
#include <random>
#include <vector>

#include "balrep/bipartite.h"
#include "balrep/core.h"

namespace balrep {

struct PartitionSample {
  std::vector<int> assignment;  // vertex -> part index
  // Normalized crossing-edge label sum X (target 0) in l2 and l1.
  double deviation_l2 = 0.0;
  double deviation_l1 = 0.0;
  double threshold = 0.0;
  int tries = 0;

  // Vertices of part p in increasing order.
  std::vector<int> Part(int p) const;
};

// Thrown when every sample misses its threshold; carries the best one.
class PartitionRetryError : public RetryExhaustedError {
 public:
  PartitionRetryError(const std::string& what, PartitionSample best)
      : RetryExhaustedError(what), best_(std::move(best)) {}
  const PartitionSample& best() const { return best_; }

 private:
  PartitionSample best_;
};

inline constexpr int kPartitionRetries = 64;

// Equipartition (A, B) of K_{2n} with ||X||_2 <= sqrt(2) * n, where X is the
// normalized label sum over E(A, B).
PartitionSample SplitComplete(const CompleteInstance& instance,
                              std::mt19937_64& rng);

// Recomputes X for an arbitrary assignment; used by SplitComplete and tests.
Label CrossingSum(const CompleteInstance& instance, const EdgeLabels& normalized,
                  const std::vector<int>& assignment);

struct ReductionOptions {
  BipartiteOptions bipartite;
  std::uint64_t seed = 0;  // Partition sampling seed.
};

struct CompleteSolution {
  Matching matching;  // Vertex pairs (u, v), u < v, sorted.
  ImbalanceReport report;
  Ledger ledger;
  PartitionSample partition;
};

CompleteSolution SolveComplete(const CompleteInstance& instance,
                               const ReductionOptions& options = {});

// r equal parts of K^{(r)}_{rn} with ||X||_2 <= sqrt(2) * (rn)^{r-1}, X the
// normalized label sum over the edges meeting every part once.
PartitionSample SplitHypergraph(const HypergraphInstance& instance,
                                std::mt19937_64& rng);

Label TransversalSum(const HypergraphInstance& instance,
                     const EdgeLabels& normalized,
                     const std::vector<int>& assignment);

struct HypergraphSolution {
  Matching matching;  // Sorted r-tuples, sorted.
  ImbalanceReport report;
  Ledger ledger;
  // ||h2(M2) - h1(M1)||_1 per recursion level, outermost last.
  std::vector<double> level_errors;
  PartitionSample partition;
};

HypergraphSolution SolveHypergraph(const HypergraphInstance& instance,
                                   const ReductionOptions& options = {});

}  // namespace balrep

#endif  // BALREP_REDUCE_H_
