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

// Domain types shared by every solver: edge-label tables, the labelled host
// families (complete, bipartite, multipartite, r-uniform hypergraph), integral
// solutions, and the imbalance functional
//
//   f_h(G') = || h(G') - (e(G') / e(G)) * h(G) ||_1
//
// which measures how far a subgraph G' is from being representative of G.

#ifndef BALREP_CORE_H_
#define BALREP_CORE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace balrep {

// Equality tolerance for real-valued labels.
inline constexpr double kTolerance = 1e-9;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad sizes, colours out of range, unlabelled pairs.
class InvalidInstanceError : public Error {
 public:
  using Error::Error;
};

// An exhaustive routine was asked to go beyond its declared budget.
class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

// A checked internal invariant failed (tolerance breach, impossible state).
class InvariantViolationError : public Error {
 public:
  using Error::Error;
};

// A randomized sampler exhausted its retry limit.
class RetryExhaustedError : public Error {
 public:
  using Error::Error;
};

using Label = std::vector<double>;

double L1Norm(std::span<const double> v);
double L2Norm(std::span<const double> v);

// Canonical unordered vertex pair, u < v.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Index of the pair {u, v} among the C(n, 2) pairs of [n], row-major over u.
std::size_t PairIndex(int u, int v, int n);
Edge PairFromIndex(std::size_t index, int n);

std::uint64_t Binomial(int n, int r);

// A table of k-dimensional labels, one per edge, optionally backed by a
// colouring with colours in [1, k].
class EdgeLabels {
 public:
  EdgeLabels() = default;
  EdgeLabels(int k, std::size_t edge_count);

  // Each colour i becomes the i-th standard basis vector.
  static EdgeLabels FromColours(std::vector<int> colours, int k);
  static EdgeLabels FromRows(const std::vector<Label>& rows, int k);

  int k() const { return k_; }
  std::size_t size() const { return k_ == 0 ? 0 : data_.size() / k_; }

  std::span<const double> operator[](std::size_t e) const {
    return {data_.data() + e * k_, static_cast<std::size_t>(k_)};
  }
  std::span<double> Mutable(std::size_t e) {
    return {data_.data() + e * k_, static_cast<std::size_t>(k_)};
  }

  bool has_colours() const { return !colours_.empty(); }
  const std::vector<int>& colours() const { return colours_; }
  int colour(std::size_t e) const { return colours_[e]; }

  Label Sum() const;
  double MaxL1() const;

  // Adds label e into acc (scaled).
  void AddTo(std::size_t e, std::span<double> acc, double scale = 1.0) const;

 private:
  int k_ = 0;
  std::vector<double> data_;
  std::vector<int> colours_;
};

struct ImbalanceReport {
  std::vector<double> per_coordinate;
  double total_l1 = 0.0;
};

// f_h from aggregate sums. Used by every host-specific overload.
ImbalanceReport ImbalanceFromSums(std::span<const double> host_sum,
                                  std::size_t host_edges,
                                  std::span<const double> sub_sum,
                                  std::size_t sub_edges);

// Exact f_c from colour counts: per coordinate
// (count_i * e(G) - e(G') * class_i) / e(G), evaluated in integers.
ImbalanceReport ImbalanceFromCounts(std::span<const std::int64_t> host_counts,
                                    std::size_t host_edges,
                                    std::span<const std::int64_t> sub_counts,
                                    std::size_t sub_edges);

// Imbalance of the edge subset `subgraph` (edge indices into `labels`).
// Colour-backed tables use the exact integer route.
ImbalanceReport ImbalanceOfEdges(const EdgeLabels& labels,
                                 std::span<const std::size_t> subgraph);

struct NormalizedLabels {
  EdgeLabels labels;
  Label shift;
  double scale = 1.0;
};

// Replaces h by scale * (h - mean) so that the labels sum to zero and every
// label has l1-norm at most 1. The scale is 1/2 when all inputs already have
// norm at most 1. f_h is shift-invariant, so f_h = f_{h'} / scale.
NormalizedLabels Normalize(const EdgeLabels& labels);

// K_n with a label on every pair.
class CompleteInstance {
 public:
  CompleteInstance() = default;
  CompleteInstance(int n_vertices, EdgeLabels labels);
  static CompleteInstance FromColours(int n_vertices, std::vector<int> colours,
                                      int k);

  int n_vertices() const { return n_; }
  int k() const { return labels_.k(); }
  std::size_t edge_count() const { return labels_.size(); }
  const EdgeLabels& labels() const { return labels_; }
  std::span<const double> label(int u, int v) const {
    return labels_[PairIndex(u, v, n_)];
  }
  std::size_t index(int u, int v) const { return PairIndex(u, v, n_); }

 private:
  int n_ = 0;
  EdgeLabels labels_;
};

// K_{n,n}; left vertex l and right vertex r are both indexed in [0, n), and
// the label of (l, r) lives at l * n + r.
class BipartiteInstance {
 public:
  BipartiteInstance() = default;
  BipartiteInstance(int n, EdgeLabels labels);
  static BipartiteInstance FromColours(int n, std::vector<int> colours, int k);

  int n() const { return n_; }
  int k() const { return labels_.k(); }
  const EdgeLabels& labels() const { return labels_; }
  std::size_t index(int l, int r) const {
    return static_cast<std::size_t>(l) * n_ + r;
  }
  std::span<const double> label(int l, int r) const {
    return labels_[index(l, r)];
  }

 private:
  int n_ = 0;
  EdgeLabels labels_;
};

// Complete r-partite graph on parts V_1..V_r of [n_vertices]. Labels are
// stored over all pairs; only cross-part pairs are meaningful.
class MultipartiteInstance {
 public:
  MultipartiteInstance() = default;
  MultipartiteInstance(std::vector<std::vector<int>> parts, EdgeLabels labels);

  int n_vertices() const { return n_; }
  int k() const { return labels_.k(); }
  int part_count() const { return static_cast<int>(parts_.size()); }
  const std::vector<std::vector<int>>& parts() const { return parts_; }
  int part_of(int v) const { return part_of_[v]; }
  const EdgeLabels& labels() const { return labels_; }
  std::span<const double> label(int u, int v) const {
    return labels_[PairIndex(u, v, n_)];
  }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> parts_;
  std::vector<int> part_of_;
  EdgeLabels labels_;
};

// K^{(r)}_{rn}: every r-subset of [r * n] carries a label, stored at the
// colexicographic rank of its sorted vertex tuple.
class HypergraphInstance {
 public:
  HypergraphInstance() = default;
  HypergraphInstance(int r, int n, EdgeLabels labels);

  int r() const { return r_; }
  int n() const { return n_; }
  int n_vertices() const { return r_ * n_; }
  int k() const { return labels_.k(); }
  const EdgeLabels& labels() const { return labels_; }
  std::span<const double> label(std::span<const int> sorted_edge) const;

  static std::size_t Rank(std::span<const int> sorted_edge);
  static std::vector<int> Unrank(std::size_t rank, int r);

 private:
  int r_ = 0;
  int n_ = 0;
  EdgeLabels labels_;
};

// A set of vertex-disjoint edges (pairs, bipartite (left, right) pairs, or
// r-tuples).
struct Matching {
  std::vector<std::vector<int>> edges;
};

// True when the edges are pairwise disjoint tuples over [n_vertices] and every
// vertex is covered exactly once.
bool IsPerfectMatching(const Matching& m, int n_vertices);
// (left, right) pairs over [n] x [n].
bool IsPerfectBipartiteMatching(const Matching& m, int n);

ImbalanceReport Imbalance(const CompleteInstance& instance,
                          std::span<const Edge> subgraph);
ImbalanceReport Imbalance(const BipartiteInstance& instance,
                          const Matching& subgraph);
ImbalanceReport Imbalance(const HypergraphInstance& instance,
                          const Matching& subgraph);

}  // namespace balrep

#endif  // BALREP_CORE_H_
