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

// Near-representative copies of bounded-degree spanning graphs in K_n.
//
// A pattern H is split into independent parts U_1..U_r whose average degrees
// are close to the overall average (an (r, C)-uniform partition). The host
// vertices are split into parts V_i of matching sizes, and H is then embedded
// part by part: the i-th part is placed by a bipartite matching between U_i
// and V_i under labels that average over all ways of placing the later parts.

#ifndef BALREP_EMBED_H_
#define BALREP_EMBED_H_

#include <cstdint>
#include <random>
#include <vector>

#include "balrep/bipartite.h"
#include "balrep/core.h"
#include "balrep/reduce.h"

namespace balrep {

class PatternGraph {
 public:
  PatternGraph() = default;
  // Throws InvalidInstanceError on loops, repeated edges or bad endpoints.
  PatternGraph(int n, std::vector<Edge> edges);

  static PatternGraph Path(int n);
  static PatternGraph Cycle(int n);
  // `copies` disjoint copies of f; copy c occupies c*|f| .. (c+1)*|f| - 1.
  static PatternGraph Factor(const PatternGraph& f, int copies);

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbours(int v) const { return adjacency_[v]; }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
  int max_degree() const { return max_degree_; }
  double average_degree() const;
  bool HasEdge(int u, int v) const;

  bool IsAcyclic() const;
  // Vertex sets of the connected components, each sorted, ordered by their
  // smallest vertex.
  std::vector<std::vector<int>> Components() const;
  // The subgraph induced by `vertices`, relabelled 0..|vertices|-1 in order.
  PatternGraph Induced(const std::vector<int>& vertices) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  int max_degree_ = 0;
};

// Parts of V(H) with an (r, C) certificate:
//   sum_i (n_i / n) (d_i - d)^2 <= C^2,
// where d_i is the average degree inside part i.
struct UniformPartition {
  std::vector<std::vector<int>> parts;
  int r = 0;
  double c = 0.0;
};

struct PartitionCheck {
  bool covers = false;       // Every vertex in exactly one part.
  bool independent = false;  // No edge inside a part.
  double variance = 0.0;     // sum_i (n_i / n) (d_i - d)^2
  bool certificate_holds = false;

  bool ok() const { return covers && independent && certificate_holds; }
};

PartitionCheck ValidatePartition(const PatternGraph& pattern,
                                 const UniformPartition& partition);

// Cyclic-shift partition of an F-factor. copies[c][x] is the pattern vertex
// playing vertex x of F in copy c.
UniformPartition FactorPartition(const PatternGraph& f,
                                 const std::vector<std::vector<int>>& copies);
// The same for PatternGraph::Factor(f, n / |f|). Throws
// InvalidInstanceError unless |f| divides n.
UniformPartition FactorPartition(const PatternGraph& f, int n);

struct ColouringSampleOptions {
  int max_samples = 1000;
  // Burn-in is burn_in_factor * n * ln(n) single-site updates; the same
  // number of updates separates later samples.
  double burn_in_factor = 50.0;
};

struct BoundedDegreeSample {
  UniformPartition partition;
  int samples = 0;
  std::vector<int> colouring;  // Proper 3*Delta-colouring, colours 0-based.
};

// True when every class size n_i and degree sum m_i of `colouring` (q
// colours) is within sqrt(2n log(14 Delta)) of n/q, respectively
// Delta * sqrt(2n log(14 Delta)) of d n / q.
bool ColouringWithinBounds(const PatternGraph& pattern,
                           const std::vector<int>& colouring, int q);

// Samples proper 3*Delta-colourings by single-site dynamics until one passes
// ColouringWithinBounds. Throws RetryExhaustedError after max_samples.
BoundedDegreeSample BoundedDegreePartition(
    const PatternGraph& pattern, std::mt19937_64& rng,
    const ColouringSampleOptions& options = {});

struct ForestDeletion {
  std::vector<int> removed;    // X, in deletion order.
  std::vector<int> colouring;  // 0 or 1, -1 on removed vertices.
  // Each class within n / 2^R of (n - |X|) / 2.
  bool bound_met = false;
};

// Centroid-and-flip recursion: at most R deletions leave a proper
// 2-colouring with classes within n / 2^R of (n - |X|) / 2.
ForestDeletion ForestBalancedDeletion(const PatternGraph& forest, int r);

// Four-part partition of a forest (fewer parts when some would be empty).
UniformPartition ForestPartition(const PatternGraph& forest);

// Q = sum_{i,j} e(U_i,U_j)^2 / (n_i n_j) and R = sum_i (n_i/n) d_i^2 - d^2.
struct PartitionMoments {
  double q = 0.0;
  double r = 0.0;
};
PartitionMoments MomentsOf(const PatternGraph& pattern,
                           const UniformPartition& partition);

struct HostPartition {
  MultipartiteInstance host;
  PartitionSample sample;  // deviation_* refer to normalized X.
};

// X = sum_e h'(e) rho_{ij(e)} over host pairs, rho_ij = e(U_i,U_j)/(n_i n_j),
// h' the normalized host labels.
Label PartwiseShift(const CompleteInstance& host, const EdgeLabels& normalized,
                    const PatternGraph& pattern,
                    const UniformPartition& partition,
                    const std::vector<int>& assignment);

// Random host parts with |V_i| = |U_i|, resampled until
// ||X||_2 <= sqrt(2) * sqrt(2 (Q + R n)).
HostPartition SampleHostPartition(const CompleteInstance& host,
                                  const PatternGraph& pattern,
                                  const UniformPartition& partition,
                                  std::mt19937_64& rng);

struct PartwiseEmbedding {
  std::vector<int> map;  // Pattern vertex -> host vertex.
};

// Mean of h(H') over all partwise embeddings of `pattern` into `host`.
Label PartwiseMean(const MultipartiteInstance& host,
                   const PatternGraph& pattern,
                   const UniformPartition& partition);

struct PartwiseResult {
  PartwiseEmbedding embedding;
  Label partwise_mean;
  double deviation = 0.0;  // ||h(H') - partwise_mean||_1
  // ||mu(H | phi_i) - mu(H | phi_{i-1})||_1 per part.
  std::vector<double> level_errors;
  Ledger ledger;  // Bipartite ledgers, in host label units.
};

// Part i of the partition is embedded into host part i.
PartwiseResult PartwiseEmbed(const MultipartiteInstance& host,
                             const PatternGraph& pattern,
                             const UniformPartition& partition,
                             const BipartiteOptions& options = {});

// Injective, in range and edge-preserving into K_n (every pair is an edge).
bool IsValidEmbedding(const PatternGraph& pattern, const std::vector<int>& map,
                      int host_vertices);

enum class PatternKind { kForest, kFactor, kBoundedDegree };

const char* PatternKindName(PatternKind kind);

struct PatternClass {
  PatternKind kind = PatternKind::kBoundedDegree;
  PatternGraph factor;                     // kFactor only.
  std::vector<std::vector<int>> copies;    // kFactor only.
};

inline constexpr int kMaxFactorVertices = 16;

// Acyclic patterns are forests. Otherwise, patterns made of at least two
// pairwise isomorphic components of at most kMaxFactorVertices vertices are
// factors; everything else is treated as bounded degree.
PatternClass ClassifyPattern(const PatternGraph& pattern);

struct EmbedOptions {
  BipartiteOptions bipartite;
  std::uint64_t seed = 0;
  ColouringSampleOptions colouring;
};

struct SpanningEmbedding {
  PatternKind kind = PatternKind::kBoundedDegree;
  UniformPartition partition;
  PartitionSample host_sample;
  PartwiseEmbedding embedding;
  ImbalanceReport report;  // f_h of the copy against e(H)/e(K_n) h(K_n).
  double partwise_deviation = 0.0;
  std::vector<double> level_errors;
  Ledger ledger;
};

SpanningEmbedding EmbedSpanning(const CompleteInstance& host,
                                const PatternGraph& pattern,
                                const EmbedOptions& options = {});

}  // namespace balrep

#endif  // BALREP_EMBED_H_
