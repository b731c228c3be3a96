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
#include <string>

namespace balrep {

double L1Norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

double L2Norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::size_t PairIndex(int u, int v, int n) {
  if (u > v) std::swap(u, v);
  const auto uu = static_cast<std::size_t>(u);
  const auto nn = static_cast<std::size_t>(n);
  return uu * (2 * nn - uu - 1) / 2 + static_cast<std::size_t>(v - u - 1);
}

Edge PairFromIndex(std::size_t index, int n) {
  int u = 0;
  std::size_t row = static_cast<std::size_t>(n - 1);
  while (index >= row) {
    index -= row;
    --row;
    ++u;
  }
  return Edge(u, u + 1 + static_cast<int>(index));
}

std::uint64_t Binomial(int n, int r) {
  if (r < 0 || n < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t out = 1;
  for (int i = 1; i <= r; ++i) {
    out = out * static_cast<std::uint64_t>(n - r + i) / i;
  }
  return out;
}

EdgeLabels::EdgeLabels(int k, std::size_t edge_count)
    : k_(k), data_(static_cast<std::size_t>(k) * edge_count, 0.0) {
  if (k <= 0) throw InvalidInstanceError("label dimension k must be positive");
}

EdgeLabels EdgeLabels::FromColours(std::vector<int> colours, int k) {
  EdgeLabels out(k, colours.size());
  for (std::size_t e = 0; e < colours.size(); ++e) {
    if (colours[e] < 1 || colours[e] > k) {
      throw InvalidInstanceError("colour " + std::to_string(colours[e]) +
                                 " out of range [1, " + std::to_string(k) +
                                 "]");
    }
    out.data_[e * k + colours[e] - 1] = 1.0;
  }
  out.colours_ = std::move(colours);
  return out;
}

EdgeLabels EdgeLabels::FromRows(const std::vector<Label>& rows, int k) {
  EdgeLabels out(k, rows.size());
  for (std::size_t e = 0; e < rows.size(); ++e) {
    if (static_cast<int>(rows[e].size()) != k) {
      throw InvalidInstanceError("label " + std::to_string(e) +
                                 " has wrong dimension");
    }
    std::copy(rows[e].begin(), rows[e].end(), out.data_.begin() + e * k);
  }
  return out;
}

Label EdgeLabels::Sum() const {
  Label s(k_, 0.0);
  for (std::size_t e = 0; e < size(); ++e) AddTo(e, s);
  return s;
}

double EdgeLabels::MaxL1() const {
  double m = 0.0;
  for (std::size_t e = 0; e < size(); ++e) m = std::max(m, L1Norm((*this)[e]));
  return m;
}

void EdgeLabels::AddTo(std::size_t e, std::span<double> acc,
                       double scale) const {
  const double* row = data_.data() + e * k_;
  for (int i = 0; i < k_; ++i) acc[i] += scale * row[i];
}

ImbalanceReport ImbalanceFromSums(std::span<const double> host_sum,
                                  std::size_t host_edges,
                                  std::span<const double> sub_sum,
                                  std::size_t sub_edges) {
  if (host_edges == 0) throw InvalidInstanceError("host has no edges");
  ImbalanceReport out;
  out.per_coordinate.resize(host_sum.size());
  const double ratio =
      static_cast<double>(sub_edges) / static_cast<double>(host_edges);
  for (std::size_t i = 0; i < host_sum.size(); ++i) {
    out.per_coordinate[i] = sub_sum[i] - ratio * host_sum[i];
    out.total_l1 += std::abs(out.per_coordinate[i]);
  }
  return out;
}

ImbalanceReport ImbalanceFromCounts(std::span<const std::int64_t> host_counts,
                                    std::size_t host_edges,
                                    std::span<const std::int64_t> sub_counts,
                                    std::size_t sub_edges) {
  if (host_edges == 0) throw InvalidInstanceError("host has no edges");
  ImbalanceReport out;
  out.per_coordinate.resize(host_counts.size());
  const auto he = static_cast<std::int64_t>(host_edges);
  const auto se = static_cast<std::int64_t>(sub_edges);
  // Numerators are exact; the sum of |numerators| is divided once.
  std::int64_t total = 0;
  for (std::size_t i = 0; i < host_counts.size(); ++i) {
    const std::int64_t num = sub_counts[i] * he - se * host_counts[i];
    out.per_coordinate[i] =
        static_cast<double>(num) / static_cast<double>(he);
    total += num < 0 ? -num : num;
  }
  out.total_l1 = static_cast<double>(total) / static_cast<double>(he);
  return out;
}

ImbalanceReport ImbalanceOfEdges(const EdgeLabels& labels,
                                 std::span<const std::size_t> subgraph) {
  if (labels.size() == 0) throw InvalidInstanceError("host has no edges");
  const int k = labels.k();
  if (labels.has_colours()) {
    std::vector<std::int64_t> host(k, 0), sub(k, 0);
    for (int c : labels.colours()) ++host[c - 1];
    for (std::size_t e : subgraph) ++sub[labels.colour(e) - 1];
    return ImbalanceFromCounts(host, labels.size(), sub, subgraph.size());
  }
  Label sub(k, 0.0);
  for (std::size_t e : subgraph) labels.AddTo(e, sub);
  return ImbalanceFromSums(labels.Sum(), labels.size(), sub, subgraph.size());
}

NormalizedLabels Normalize(const EdgeLabels& labels) {
  NormalizedLabels out;
  const int k = labels.k();
  const std::size_t m = labels.size();
  out.shift.assign(k, 0.0);
  if (m > 0) {
    out.shift = labels.Sum();
    for (double& x : out.shift) x /= static_cast<double>(m);
  }
  const double max_norm = labels.MaxL1();
  out.scale = max_norm <= 1.0 ? 0.5 : 0.5 / max_norm;
  out.labels = EdgeLabels(k, m);
  for (std::size_t e = 0; e < m; ++e) {
    auto src = labels[e];
    auto dst = out.labels.Mutable(e);
    for (int i = 0; i < k; ++i) dst[i] = out.scale * (src[i] - out.shift[i]);
  }
  return out;
}

CompleteInstance::CompleteInstance(int n_vertices, EdgeLabels labels)
    : n_(n_vertices), labels_(std::move(labels)) {
  if (n_ < 1) throw InvalidInstanceError("complete host needs a vertex");
  if (labels_.size() != Binomial(n_, 2)) {
    throw InvalidInstanceError("complete host needs a label on every pair");
  }
}

CompleteInstance CompleteInstance::FromColours(int n_vertices,
                                               std::vector<int> colours,
                                               int k) {
  return CompleteInstance(n_vertices,
                          EdgeLabels::FromColours(std::move(colours), k));
}

BipartiteInstance::BipartiteInstance(int n, EdgeLabels labels)
    : n_(n), labels_(std::move(labels)) {
  if (n_ < 1) throw InvalidInstanceError("bipartite host needs n >= 1");
  if (labels_.size() != static_cast<std::size_t>(n_) * n_) {
    throw InvalidInstanceError("bipartite host needs n*n labels");
  }
}

BipartiteInstance BipartiteInstance::FromColours(int n,
                                                 std::vector<int> colours,
                                                 int k) {
  return BipartiteInstance(n, EdgeLabels::FromColours(std::move(colours), k));
}

MultipartiteInstance::MultipartiteInstance(std::vector<std::vector<int>> parts,
                                           EdgeLabels labels)
    : parts_(std::move(parts)), labels_(std::move(labels)) {
  n_ = 0;
  for (const auto& p : parts_) n_ += static_cast<int>(p.size());
  part_of_.assign(n_, -1);
  for (int i = 0; i < part_count(); ++i) {
    for (int v : parts_[i]) {
      if (v < 0 || v >= n_ || part_of_[v] != -1) {
        throw InvalidInstanceError("parts must partition the vertex set");
      }
      part_of_[v] = i;
    }
  }
  if (labels_.size() != Binomial(n_, 2)) {
    throw InvalidInstanceError("multipartite host label table has wrong size");
  }
}

HypergraphInstance::HypergraphInstance(int r, int n, EdgeLabels labels)
    : r_(r), n_(n), labels_(std::move(labels)) {
  if (r_ < 2 || n_ < 1) throw InvalidInstanceError("hypergraph needs r>=2, n>=1");
  if (labels_.size() != Binomial(r_ * n_, r_)) {
    throw InvalidInstanceError("hypergraph needs a label on every r-subset");
  }
}

std::span<const double> HypergraphInstance::label(
    std::span<const int> sorted_edge) const {
  return labels_[Rank(sorted_edge)];
}

std::size_t HypergraphInstance::Rank(std::span<const int> sorted_edge) {
  std::size_t rank = 0;
  for (std::size_t i = 0; i < sorted_edge.size(); ++i) {
    rank += Binomial(sorted_edge[i], static_cast<int>(i) + 1);
  }
  return rank;
}

std::vector<int> HypergraphInstance::Unrank(std::size_t rank, int r) {
  std::vector<int> out(r);
  for (int i = r; i >= 1; --i) {
    int c = i - 1;
    while (Binomial(c + 1, i) <= rank) ++c;
    out[i - 1] = c;
    rank -= Binomial(c, i);
  }
  return out;
}

bool IsPerfectMatching(const Matching& m, int n_vertices) {
  std::vector<char> seen(n_vertices, 0);
  int covered = 0;
  for (const auto& e : m.edges) {
    for (int v : e) {
      if (v < 0 || v >= n_vertices || seen[v]) return false;
      seen[v] = 1;
      ++covered;
    }
  }
  return covered == n_vertices;
}

bool IsPerfectBipartiteMatching(const Matching& m, int n) {
  if (static_cast<int>(m.edges.size()) != n) return false;
  std::vector<char> left(n, 0), right(n, 0);
  for (const auto& e : m.edges) {
    if (e.size() != 2) return false;
    const int l = e[0], r = e[1];
    if (l < 0 || l >= n || r < 0 || r >= n || left[l] || right[r]) {
      return false;
    }
    left[l] = right[r] = 1;
  }
  return true;
}

ImbalanceReport Imbalance(const CompleteInstance& instance,
                          std::span<const Edge> subgraph) {
  std::vector<std::size_t> idx;
  idx.reserve(subgraph.size());
  for (const Edge& e : subgraph) {
    if (e.u == e.v || e.u < 0 || e.v >= instance.n_vertices()) {
      throw InvalidInstanceError("subgraph edge not in host");
    }
    idx.push_back(instance.index(e.u, e.v));
  }
  return ImbalanceOfEdges(instance.labels(), idx);
}

ImbalanceReport Imbalance(const BipartiteInstance& instance,
                          const Matching& subgraph) {
  std::vector<std::size_t> idx;
  idx.reserve(subgraph.edges.size());
  for (const auto& e : subgraph.edges) {
    if (e.size() != 2 || e[0] < 0 || e[0] >= instance.n() || e[1] < 0 ||
        e[1] >= instance.n()) {
      throw InvalidInstanceError("subgraph edge not in host");
    }
    idx.push_back(instance.index(e[0], e[1]));
  }
  return ImbalanceOfEdges(instance.labels(), idx);
}

ImbalanceReport Imbalance(const HypergraphInstance& instance,
                          const Matching& subgraph) {
  std::vector<std::size_t> idx;
  idx.reserve(subgraph.edges.size());
  for (auto e : subgraph.edges) {
    std::sort(e.begin(), e.end());
    if (static_cast<int>(e.size()) != instance.r() || e.front() < 0 ||
        e.back() >= instance.n_vertices() ||
        std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw InvalidInstanceError("subgraph edge not in host");
    }
    idx.push_back(HypergraphInstance::Rank(e));
  }
  return ImbalanceOfEdges(instance.labels(), idx);
}

}  // namespace balrep
