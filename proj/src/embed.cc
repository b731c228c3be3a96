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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace balrep {
namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

Ledger Scaled(const Ledger& l, double f) {
  Ledger out;
  out.relax = l.relax * f;
  out.necklace = l.necklace * f;
  out.deleted = l.deleted * f;
  out.partition = l.partition * f;
  out.completion = l.completion * f;
  return out;
}

std::vector<int> PartIndex(int n, const UniformPartition& partition) {
  std::vector<int> part(n, -1);
  for (std::size_t i = 0; i < partition.parts.size(); ++i) {
    for (int v : partition.parts[i]) {
      if (v < 0 || v >= n || part[v] != -1) {
        throw InvalidInstanceError("partition does not partition the pattern");
      }
      part[v] = static_cast<int>(i);
    }
  }
  for (int p : part) {
    if (p == -1) throw InvalidInstanceError("partition misses a vertex");
  }
  return part;
}

void Certify(const PatternGraph& pattern, UniformPartition& partition) {
  std::erase_if(partition.parts,
                [](const std::vector<int>& p) { return p.empty(); });
  partition.r = static_cast<int>(partition.parts.size());
  partition.c = std::sqrt(ValidatePartition(pattern, partition).variance);
}

// Backtracking isomorphism search from f onto g (same vertex count). Returns
// the image of each f vertex, or empty when none exists or the node budget
// runs out.
std::vector<int> FindIsomorphism(const PatternGraph& f, const PatternGraph& g) {
  const int n = f.n();
  if (g.n() != n || f.edges().size() != g.edges().size()) return {};
  std::vector<int> fd(n), gd(n);
  for (int v = 0; v < n; ++v) {
    fd[v] = f.degree(v);
    gd[v] = g.degree(v);
  }
  {
    std::vector<int> a = fd, b = gd;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return {};
  }
  // BFS order keeps each new vertex adjacent to an earlier one when possible.
  std::vector<int> order;
  std::vector<char> queued(n, 0);
  for (int s = 0; s < n; ++s) {
    if (queued[s]) continue;
    queued[s] = 1;
    order.push_back(s);
    for (std::size_t h = order.size() - 1; h < order.size(); ++h) {
      for (int w : f.neighbours(order[h])) {
        if (!queued[w]) {
          queued[w] = 1;
          order.push_back(w);
        }
      }
    }
  }
  std::vector<int> image(n, -1);
  std::vector<char> used(n, 0);
  long budget = 1000000;
  auto extend = [&](auto&& self, int depth) -> bool {
    if (depth == n) return true;
    if (--budget < 0) return false;
    const int x = order[depth];
    for (int y = 0; y < n; ++y) {
      if (used[y] || gd[y] != fd[x]) continue;
      bool fits = true;
      for (int j = 0; j < depth && fits; ++j) {
        const int xp = order[j];
        fits = f.HasEdge(x, xp) == g.HasEdge(y, image[xp]);
      }
      if (!fits) continue;
      image[x] = y;
      used[y] = 1;
      if (self(self, depth + 1)) return true;
      used[y] = 0;
      image[x] = -1;
    }
    return false;
  };
  if (!extend(extend, 0)) return {};
  return image;
}

// Vertices of `tree` (connected in the graph minus `removed`) with the
// smallest largest remaining piece; ties go to the smaller vertex.
int Centroid(const PatternGraph& g, const std::vector<int>& tree,
             const std::vector<char>& removed) {
  const int size = static_cast<int>(tree.size());
  std::vector<int> parent(g.n(), -1), order;
  std::vector<char> seen(g.n(), 0);
  order.push_back(tree[0]);
  seen[tree[0]] = 1;
  for (std::size_t h = 0; h < order.size(); ++h) {
    for (int w : g.neighbours(order[h])) {
      if (removed[w] || seen[w]) continue;
      seen[w] = 1;
      parent[w] = order[h];
      order.push_back(w);
    }
  }
  std::vector<int> sub(g.n(), 1), worst(g.n(), 0);
  for (std::size_t h = order.size(); h-- > 0;) {
    const int v = order[h];
    if (parent[v] != -1) {
      sub[parent[v]] += sub[v];
      worst[parent[v]] = std::max(worst[parent[v]], sub[v]);
    }
  }
  int best = -1, best_worst = 0;
  for (int v : tree) {
    const int w = std::max(worst[v], size - sub[v]);
    if (best == -1 || w < best_worst || (w == best_worst && v < best)) {
      best = v;
      best_worst = w;
    }
  }
  return best;
}

// Components of the graph minus `removed`, restricted to `within`.
std::vector<std::vector<int>> PiecesOf(const PatternGraph& g,
                                       const std::vector<int>& within,
                                       const std::vector<char>& removed) {
  std::vector<char> allowed(g.n(), 0), seen(g.n(), 0);
  for (int v : within) allowed[v] = !removed[v];
  std::vector<int> sorted = within;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::vector<int>> out;
  for (int s : sorted) {
    if (!allowed[s] || seen[s]) continue;
    std::vector<int> comp{s};
    seen[s] = 1;
    for (std::size_t h = 0; h < comp.size(); ++h) {
      for (int w : g.neighbours(comp[h])) {
        if (allowed[w] && !seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

// BFS 2-colouring of the subgraph induced by `members`; the smallest vertex
// of each component gets colour 0.
void TwoColour(const PatternGraph& g, const std::vector<char>& members,
               std::vector<int>& colour) {
  std::vector<char> seen(g.n(), 0);
  for (int s = 0; s < g.n(); ++s) {
    if (!members[s] || seen[s]) continue;
    seen[s] = 1;
    colour[s] = 0;
    std::vector<int> queue{s};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const int v = queue[h];
      for (int w : g.neighbours(v)) {
        if (!members[w] || seen[w]) continue;
        seen[w] = 1;
        colour[w] = 1 - colour[v];
        queue.push_back(w);
      }
    }
  }
}

}  // namespace

PatternGraph::PatternGraph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), adjacency_(n) {
  if (n < 0) throw InvalidInstanceError("pattern needs n >= 0");
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.u < 0 || e.v >= n || e.u == e.v) {
      throw InvalidInstanceError("pattern edge out of range or a loop");
    }
    if (i > 0 && edges_[i - 1] == e) {
      throw InvalidInstanceError("pattern has a repeated edge");
    }
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& a : adjacency_) {
    std::sort(a.begin(), a.end());
    max_degree_ = std::max(max_degree_, static_cast<int>(a.size()));
  }
}

PatternGraph PatternGraph::Path(int n) {
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return PatternGraph(n, std::move(edges));
}

PatternGraph PatternGraph::Cycle(int n) {
  if (n < 3) throw InvalidInstanceError("cycle needs n >= 3");
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return PatternGraph(n, std::move(edges));
}

PatternGraph PatternGraph::Factor(const PatternGraph& f, int copies) {
  std::vector<Edge> edges;
  for (int c = 0; c < copies; ++c) {
    for (const Edge& e : f.edges()) {
      edges.emplace_back(c * f.n() + e.u, c * f.n() + e.v);
    }
  }
  return PatternGraph(f.n() * copies, std::move(edges));
}

double PatternGraph::average_degree() const {
  return n_ == 0 ? 0.0 : 2.0 * static_cast<double>(edges_.size()) / n_;
}

bool PatternGraph::HasEdge(int u, int v) const {
  const auto& a = adjacency_[u];
  return std::binary_search(a.begin(), a.end(), v);
}

bool PatternGraph::IsAcyclic() const {
  UnionFind uf(n_);
  for (const Edge& e : edges_) {
    if (!uf.Union(e.u, e.v)) return false;
  }
  return true;
}

std::vector<std::vector<int>> PatternGraph::Components() const {
  std::vector<int> all(n_);
  std::iota(all.begin(), all.end(), 0);
  return PiecesOf(*this, all, std::vector<char>(n_, 0));
}

PatternGraph PatternGraph::Induced(const std::vector<int>& vertices) const {
  std::vector<int> index(n_, -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    index[vertices[i]] = static_cast<int>(i);
  }
  std::vector<Edge> edges;
  for (const Edge& e : edges_) {
    if (index[e.u] >= 0 && index[e.v] >= 0) {
      edges.emplace_back(index[e.u], index[e.v]);
    }
  }
  return PatternGraph(static_cast<int>(vertices.size()), std::move(edges));
}

PartitionCheck ValidatePartition(const PatternGraph& pattern,
                                 const UniformPartition& partition) {
  PartitionCheck check;
  const int n = pattern.n();
  std::vector<int> part(n, -1);
  check.covers = true;
  for (std::size_t i = 0; i < partition.parts.size(); ++i) {
    for (int v : partition.parts[i]) {
      if (v < 0 || v >= n || part[v] != -1) {
        check.covers = false;
        continue;
      }
      part[v] = static_cast<int>(i);
    }
  }
  for (int p : part) check.covers = check.covers && p != -1;
  check.independent = true;
  for (const Edge& e : pattern.edges()) {
    if (part[e.u] != -1 && part[e.u] == part[e.v]) check.independent = false;
  }
  const double d = pattern.average_degree();
  for (const auto& p : partition.parts) {
    if (p.empty() || n == 0) continue;
    double sum = 0.0;
    for (int v : p) sum += pattern.degree(v);
    const double di = sum / p.size();
    check.variance += (static_cast<double>(p.size()) / n) * (di - d) * (di - d);
  }
  const double c2 = partition.c * partition.c;
  check.certificate_holds =
      check.variance <= c2 + 1e-9 * std::max(1.0, c2);
  return check;
}

UniformPartition FactorPartition(const PatternGraph& f,
                                 const std::vector<std::vector<int>>& copies) {
  const int r = f.n();
  if (r == 0) throw InvalidInstanceError("factor graph needs a vertex");
  UniformPartition out;
  out.parts.assign(r, {});
  for (std::size_t c = 0; c < copies.size(); ++c) {
    if (static_cast<int>(copies[c].size()) != r) {
      throw InvalidInstanceError("factor copy of the wrong size");
    }
    const int shift = static_cast<int>(c % r);
    for (int x = 0; x < r; ++x) {
      out.parts[(x + shift) % r].push_back(copies[c][x]);
    }
  }
  for (auto& p : out.parts) std::sort(p.begin(), p.end());
  const int n = r * static_cast<int>(copies.size());
  out.r = r;
  out.c = static_cast<double>(r) * r * r / n;
  return out;
}

UniformPartition FactorPartition(const PatternGraph& f, int n) {
  if (f.n() == 0 || n % f.n() != 0) {
    throw InvalidInstanceError("factor size must divide n");
  }
  std::vector<std::vector<int>> copies(n / f.n());
  for (std::size_t c = 0; c < copies.size(); ++c) {
    for (int x = 0; x < f.n(); ++x) {
      copies[c].push_back(static_cast<int>(c) * f.n() + x);
    }
  }
  return FactorPartition(f, copies);
}

bool ColouringWithinBounds(const PatternGraph& pattern,
                           const std::vector<int>& colouring, int q) {
  const int n = pattern.n();
  const int delta = std::max(1, pattern.max_degree());
  const double slack = std::sqrt(2.0 * n * std::log(14.0 * delta));
  std::vector<long> count(q, 0), degree_sum(q, 0);
  for (int v = 0; v < n; ++v) {
    ++count[colouring[v]];
    degree_sum[colouring[v]] += pattern.degree(v);
  }
  const double d = pattern.average_degree();
  for (int i = 0; i < q; ++i) {
    if (std::abs(count[i] - static_cast<double>(n) / q) > slack) return false;
    if (std::abs(degree_sum[i] - d * n / q) > delta * slack) return false;
  }
  return true;
}

BoundedDegreeSample BoundedDegreePartition(
    const PatternGraph& pattern, std::mt19937_64& rng,
    const ColouringSampleOptions& options) {
  const int n = pattern.n();
  const int delta = pattern.max_degree();
  if (delta < 1) throw InvalidInstanceError("bounded-degree partition needs an edge");
  const int q = 3 * delta;
  if (n < q) throw InvalidInstanceError("bounded-degree partition needs n >= 3 Delta");

  std::vector<int> colour(n, -1);
  for (int v = 0; v < n; ++v) {
    std::vector<char> taken(q, 0);
    for (int w : pattern.neighbours(v)) {
      if (colour[w] >= 0) taken[colour[w]] = 1;
    }
    colour[v] = static_cast<int>(std::find(taken.begin(), taken.end(), 0) -
                                 taken.begin());
  }
  const long steps = std::max<long>(
      n, static_cast<long>(options.burn_in_factor * n *
                           std::log(std::max(2, n))));
  std::uniform_int_distribution<int> pick_vertex(0, n - 1);
  std::vector<int> legal;
  legal.reserve(q);
  for (int s = 1; s <= options.max_samples; ++s) {
    for (long t = 0; t < steps; ++t) {
      const int v = pick_vertex(rng);
      std::vector<char> taken(q, 0);
      for (int w : pattern.neighbours(v)) taken[colour[w]] = 1;
      legal.clear();
      for (int c = 0; c < q; ++c) {
        if (!taken[c]) legal.push_back(c);
      }
      colour[v] = legal[std::uniform_int_distribution<std::size_t>(
          0, legal.size() - 1)(rng)];
    }
    if (!ColouringWithinBounds(pattern, colour, q)) continue;
    BoundedDegreeSample out;
    out.samples = s;
    out.colouring = colour;
    out.partition.parts.assign(q, {});
    for (int v = 0; v < n; ++v) out.partition.parts[colour[v]].push_back(v);
    Certify(pattern, out.partition);
    return out;
  }
  std::ostringstream msg;
  msg << "no colouring within the concentration bounds after "
      << options.max_samples << " samples";
  throw RetryExhaustedError(msg.str());
}

ForestDeletion ForestBalancedDeletion(const PatternGraph& forest, int r) {
  if (!forest.IsAcyclic()) throw InvalidInstanceError("pattern is not a forest");
  if (r < 1) throw InvalidInstanceError("deletion budget must be >= 1");
  const int n = forest.n();
  ForestDeletion out;
  out.colouring.assign(n, -1);
  if (n == 0) {
    out.bound_met = true;
    return out;
  }
  std::vector<char> removed(n, 0), members(n, 1);
  TwoColour(forest, members, out.colouring);
  const double bound = n / std::pow(2.0, r);
  long count[2] = {0, 0};
  for (int v = 0; v < n; ++v) ++count[out.colouring[v]];
  auto within = [&]() {
    return std::abs(count[0] - count[1]) / 2.0 <= bound + 1e-12;
  };
  auto remove = [&](int v) {
    --count[out.colouring[v]];
    out.colouring[v] = -1;
    removed[v] = 1;
    out.removed.push_back(v);
  };
  auto flip = [&](const std::vector<int>& piece) {
    for (int v : piece) {
      --count[out.colouring[v]];
      out.colouring[v] = 1 - out.colouring[v];
      ++count[out.colouring[v]];
    }
  };

  const int rounds = std::min(r, static_cast<int>(std::floor(std::log2(n))));
  // The first tree is the largest component of the forest.
  std::vector<int> tree;
  for (auto& comp : forest.Components()) {
    if (comp.size() > tree.size()) tree = comp;
  }
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (int m = 1; m <= rounds && !within() && !tree.empty(); ++m) {
    const int v = Centroid(forest, tree, removed);
    remove(v);
    const auto pieces = PiecesOf(forest, m == 1 ? all : tree, removed);
    if (count[0] == count[1]) break;
    const int dominant = count[0] > count[1] ? 0 : 1;
    std::vector<int> next;
    for (const auto& piece : pieces) {
      flip(piece);
      if (count[dominant] > count[1 - dominant]) continue;
      flip(piece);
      next = piece;
      break;
    }
    if (next.empty()) {
      for (const auto& piece : pieces) {
        if (piece.size() > next.size()) next = piece;
      }
    }
    tree = std::move(next);
  }
  if (!within() && static_cast<int>(out.removed.size()) < r &&
      std::abs(count[0] - count[1]) == 1) {
    const int larger = count[0] > count[1] ? 0 : 1;
    for (int v = 0; v < n; ++v) {
      if (out.colouring[v] == larger) {
        remove(v);
        break;
      }
    }
  }
  out.bound_met = within();
  return out;
}

UniformPartition ForestPartition(const PatternGraph& forest) {
  if (!forest.IsAcyclic()) throw InvalidInstanceError("pattern is not a forest");
  const int n = forest.n();
  const long delta = forest.max_degree();
  UniformPartition out;
  if (n == 0) return out;

  if (16 * delta * delta > n) {
    ForestDeletion del = ForestBalancedDeletion(forest, 2);
    std::vector<int> x = del.removed;
    std::vector<int> classes[2];
    for (int v = 0; v < n; ++v) {
      if (del.colouring[v] >= 0) classes[del.colouring[v]].push_back(v);
    }
    while (x.size() < 2 && !(classes[0].empty() && classes[1].empty())) {
      const int from = classes[0].size() >= classes[1].size() ? 0 : 1;
      x.push_back(classes[from].front());
      classes[from].erase(classes[from].begin());
    }
    out.parts = {classes[0], classes[1]};
    for (int v : x) out.parts.push_back({v});
  } else {
    int r = 1;
    if (delta == 0) {
      r = static_cast<int>(std::floor(std::log2(n))) + 1;
    } else {
      while (static_cast<long>(r + 1) * (r + 1) * delta * delta <= n) ++r;
    }
    ForestDeletion del = ForestBalancedDeletion(forest, r);
    std::vector<int> side(n);
    long size[2] = {0, 0};
    for (int v = 0; v < n; ++v) {
      side[v] = del.colouring[v];
      if (side[v] >= 0) ++size[side[v]];
    }
    for (int v : del.removed) {
      const int to = size[0] <= size[1] ? 0 : 1;
      side[v] = to;
      ++size[to];
    }
    for (int c = 0; c < 2; ++c) {
      std::vector<char> in(n, 0), in_forest(n, 0);
      for (int v = 0; v < n; ++v) in[v] = side[v] == c;
      for (const Edge& e : forest.edges()) {
        if (in[e.u] && in[e.v]) in_forest[e.u] = in_forest[e.v] = 1;
      }
      std::vector<int> sub(n, -1);
      TwoColour(forest, in_forest, sub);
      std::vector<int> a, b;
      for (int v = 0; v < n; ++v) {
        if (in_forest[v]) (sub[v] == 0 ? a : b).push_back(v);
      }
      bool extra_to_a = true;
      for (long x = 0; x <= delta; ++x) {
        std::vector<int> group;
        for (int v = 0; v < n; ++v) {
          if (in[v] && !in_forest[v] && forest.degree(v) == x) {
            group.push_back(v);
          }
        }
        for (std::size_t i = 0; i < group.size(); ++i) {
          const bool to_a = (i % 2 == 0) == extra_to_a;
          (to_a ? a : b).push_back(group[i]);
        }
        if (group.size() % 2 == 1) extra_to_a = !extra_to_a;
      }
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      out.parts.push_back(std::move(a));
      out.parts.push_back(std::move(b));
    }
  }
  Certify(forest, out);
  return out;
}

PartitionMoments MomentsOf(const PatternGraph& pattern,
                           const UniformPartition& partition) {
  const int n = pattern.n();
  const std::vector<int> part = PartIndex(n, partition);
  const std::size_t r = partition.parts.size();
  std::vector<double> between(r * r, 0.0), degree_sum(r, 0.0);
  for (const Edge& e : pattern.edges()) {
    between[part[e.u] * r + part[e.v]] += 1.0;
    between[part[e.v] * r + part[e.u]] += 1.0;
  }
  for (int v = 0; v < n; ++v) degree_sum[part[v]] += pattern.degree(v);
  PartitionMoments m;
  double second = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    const double ni = partition.parts[i].size();
    if (ni == 0) continue;
    const double di = degree_sum[i] / ni;
    second += ni / n * di * di;
    for (std::size_t j = 0; j < r; ++j) {
      const double nj = partition.parts[j].size();
      if (nj == 0 || i == j) continue;
      m.q += between[i * r + j] * between[i * r + j] / (ni * nj);
    }
  }
  const double d = pattern.average_degree();
  m.r = std::max(0.0, second - d * d);
  return m;
}

Label PartwiseShift(const CompleteInstance& host, const EdgeLabels& normalized,
                    const PatternGraph& pattern,
                    const UniformPartition& partition,
                    const std::vector<int>& assignment) {
  const int n = host.n_vertices();
  const std::vector<int> part = PartIndex(pattern.n(), partition);
  const std::size_t r = partition.parts.size();
  std::vector<double> rho(r * r, 0.0);
  for (const Edge& e : pattern.edges()) {
    rho[part[e.u] * r + part[e.v]] += 1.0;
    rho[part[e.v] * r + part[e.u]] += 1.0;
  }
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      const double denom = static_cast<double>(partition.parts[i].size()) *
                           partition.parts[j].size();
      rho[i * r + j] = denom > 0 ? rho[i * r + j] / denom : 0.0;
    }
  }
  Label x(host.k(), 0.0);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double w = rho[assignment[u] * r + assignment[v]];
      if (w != 0.0) normalized.AddTo(host.index(u, v), x, w);
    }
  }
  return x;
}

HostPartition SampleHostPartition(const CompleteInstance& host,
                                  const PatternGraph& pattern,
                                  const UniformPartition& partition,
                                  std::mt19937_64& rng) {
  const int n = host.n_vertices();
  if (pattern.n() != n) {
    throw InvalidInstanceError("pattern and host sizes differ");
  }
  const NormalizedLabels norm = Normalize(host.labels());
  const PartitionMoments m = MomentsOf(pattern, partition);
  const double threshold = std::sqrt(2.0) * std::sqrt(2.0 * (m.q + m.r * n));
  PartitionSample best;
  bool have = false;
  for (int t = 1; t <= kPartitionRetries; ++t) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    PartitionSample s;
    s.assignment.assign(n, -1);
    std::size_t next = 0;
    for (std::size_t i = 0; i < partition.parts.size(); ++i) {
      for (std::size_t c = 0; c < partition.parts[i].size(); ++c) {
        s.assignment[order[next++]] = static_cast<int>(i);
      }
    }
    const Label x =
        PartwiseShift(host, norm.labels, pattern, partition, s.assignment);
    s.deviation_l2 = L2Norm(x);
    s.deviation_l1 = L1Norm(x);
    s.threshold = threshold;
    s.tries = t;
    if (s.deviation_l2 <= threshold + 1e-12) {
      HostPartition out;
      std::vector<std::vector<int>> parts(partition.parts.size());
      for (int v = 0; v < n; ++v) parts[s.assignment[v]].push_back(v);
      out.host = MultipartiteInstance(std::move(parts), host.labels());
      out.sample = std::move(s);
      return out;
    }
    if (!have || s.deviation_l2 < best.deviation_l2) {
      best = s;
      have = true;
    }
  }
  std::ostringstream msg;
  msg << "no host partition within " << threshold << " after "
      << kPartitionRetries << " samples";
  throw PartitionRetryError(msg.str(), best);
}

Label PartwiseMean(const MultipartiteInstance& host,
                   const PatternGraph& pattern,
                   const UniformPartition& partition) {
  const int k = host.k();
  const std::vector<int> part = PartIndex(pattern.n(), partition);
  const int r = host.part_count();
  std::vector<double> block(static_cast<std::size_t>(r) * r * k, 0.0);
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      double* t = &block[(static_cast<std::size_t>(i) * r + j) * k];
      for (int b : host.parts()[i]) {
        for (int v : host.parts()[j]) {
          const auto h = host.label(b, v);
          for (int c = 0; c < k; ++c) t[c] += h[c];
        }
      }
    }
  }
  Label mean(k, 0.0);
  for (const Edge& e : pattern.edges()) {
    int i = part[e.u], j = part[e.v];
    if (i == j) throw InvalidInstanceError("pattern edge inside a part");
    if (i > j) std::swap(i, j);
    const double denom = static_cast<double>(host.parts()[i].size()) *
                         host.parts()[j].size();
    const double* t = &block[(static_cast<std::size_t>(i) * r + j) * k];
    for (int c = 0; c < k; ++c) mean[c] += t[c] / denom;
  }
  return mean;
}

PartwiseResult PartwiseEmbed(const MultipartiteInstance& host,
                             const PatternGraph& pattern,
                             const UniformPartition& partition,
                             const BipartiteOptions& options) {
  const int n = pattern.n();
  const int k = host.k();
  const int r = static_cast<int>(partition.parts.size());
  if (host.n_vertices() != n || host.part_count() != r) {
    throw InvalidInstanceError("host parts do not match the partition");
  }
  for (int i = 0; i < r; ++i) {
    if (host.parts()[i].size() != partition.parts[i].size()) {
      throw InvalidInstanceError("host part size differs from pattern part");
    }
  }
  const std::vector<int> part = PartIndex(n, partition);
  for (const Edge& e : pattern.edges()) {
    if (part[e.u] == part[e.v]) {
      throw InvalidInstanceError("pattern edge inside a part");
    }
  }
  PartwiseResult out;
  out.partwise_mean = PartwiseMean(host, pattern, partition);
  const int delta = pattern.max_degree();
  const double scale = delta > 0 ? 1.0 / delta : 1.0;

  // to_part[b][j] = sum over v in V_j of h(b, v).
  std::vector<double> to_part(static_cast<std::size_t>(n) * r * k, 0.0);
  for (int b = 0; b < n; ++b) {
    for (int j = 0; j < r; ++j) {
      if (j == host.part_of(b)) continue;
      double* t = &to_part[(static_cast<std::size_t>(b) * r + j) * k];
      for (int v : host.parts()[j]) {
        const auto h = host.label(b, v);
        for (int c = 0; c < k; ++c) t[c] += h[c];
      }
    }
  }

  std::vector<int>& phi = out.embedding.map;
  phi.assign(n, -1);
  for (int i = 0; i < r; ++i) {
    const auto& us = partition.parts[i];
    const auto& vs = host.parts()[i];
    const int m = static_cast<int>(us.size());
    if (m == 0) continue;
    EdgeLabels labels(k, static_cast<std::size_t>(m) * m);
    Label total(k, 0.0);
    for (int ai = 0; ai < m; ++ai) {
      const int a = us[ai];
      std::vector<double> later(r, 0.0);
      for (int w : pattern.neighbours(a)) {
        if (part[w] > i) later[part[w]] += 1.0;
      }
      for (int j = i + 1; j < r; ++j) {
        if (later[j] > 0) later[j] /= host.parts()[j].size();
      }
      for (int bi = 0; bi < m; ++bi) {
        const int b = vs[bi];
        auto dst = labels.Mutable(static_cast<std::size_t>(ai) * m + bi);
        for (int w : pattern.neighbours(a)) {
          if (part[w] >= i) continue;
          const auto h = host.label(b, phi[w]);
          for (int c = 0; c < k; ++c) dst[c] += h[c];
        }
        for (int j = i + 1; j < r; ++j) {
          if (later[j] == 0.0) continue;
          const double* t = &to_part[(static_cast<std::size_t>(b) * r + j) * k];
          for (int c = 0; c < k; ++c) dst[c] += later[j] * t[c];
        }
        for (int c = 0; c < k; ++c) {
          total[c] += dst[c];
          dst[c] *= scale;
        }
      }
    }
    BipartiteOptions level = options;
    level.seed = options.seed + 0x51ed27ULL * (i + 1);
    const BipartiteSolution sol =
        SolveBipartite(BipartiteInstance(m, std::move(labels)), level);
    out.ledger += Scaled(sol.ledger, 1.0 / scale);
    Label diff(k, 0.0);
    for (int c = 0; c < k; ++c) diff[c] = -total[c] / m;
    for (const auto& pair : sol.matching.edges) {
      const int ai = pair[0], bi = pair[1];
      phi[us[ai]] = vs[bi];
    }
    // Level error uses the unscaled labels, recomputed from the host.
    for (const auto& pair : sol.matching.edges) {
      const int a = us[pair[0]], b = vs[pair[1]];
      for (int w : pattern.neighbours(a)) {
        if (part[w] < i) {
          const auto h = host.label(b, phi[w]);
          for (int c = 0; c < k; ++c) diff[c] += h[c];
        } else if (part[w] > i) {
          const double* t =
              &to_part[(static_cast<std::size_t>(b) * r + part[w]) * k];
          const double p = 1.0 / host.parts()[part[w]].size();
          for (int c = 0; c < k; ++c) diff[c] += p * t[c];
        }
      }
    }
    out.level_errors.push_back(L1Norm(diff));
  }

  Label copy(k, 0.0);
  for (const Edge& e : pattern.edges()) {
    const auto h = host.label(phi[e.u], phi[e.v]);
    for (int c = 0; c < k; ++c) copy[c] += h[c];
  }
  for (int c = 0; c < k; ++c) copy[c] -= out.partwise_mean[c];
  out.deviation = L1Norm(copy);
  return out;
}

bool IsValidEmbedding(const PatternGraph& pattern, const std::vector<int>& map,
                      int host_vertices) {
  if (static_cast<int>(map.size()) != pattern.n()) return false;
  std::vector<char> used(host_vertices, 0);
  for (int x : map) {
    if (x < 0 || x >= host_vertices || used[x]) return false;
    used[x] = 1;
  }
  return true;
}

const char* PatternKindName(PatternKind kind) {
  switch (kind) {
    case PatternKind::kForest:
      return "forest";
    case PatternKind::kFactor:
      return "factor";
    case PatternKind::kBoundedDegree:
      return "bounded-degree";
  }
  return "unknown";
}

PatternClass ClassifyPattern(const PatternGraph& pattern) {
  PatternClass out;
  if (pattern.IsAcyclic()) {
    out.kind = PatternKind::kForest;
    return out;
  }
  const auto comps = pattern.Components();
  const std::size_t r = comps.front().size();
  if (comps.size() < 2 || r > kMaxFactorVertices) return out;
  for (const auto& c : comps) {
    if (c.size() != r) return out;
  }
  PatternGraph f = pattern.Induced(comps.front());
  std::vector<std::vector<int>> copies;
  for (const auto& c : comps) {
    const std::vector<int> image = FindIsomorphism(f, pattern.Induced(c));
    if (image.empty()) return out;
    std::vector<int> copy(r);
    for (std::size_t x = 0; x < r; ++x) copy[x] = c[image[x]];
    copies.push_back(std::move(copy));
  }
  out.kind = PatternKind::kFactor;
  out.factor = std::move(f);
  out.copies = std::move(copies);
  return out;
}

SpanningEmbedding EmbedSpanning(const CompleteInstance& host,
                                const PatternGraph& pattern,
                                const EmbedOptions& options) {
  if (pattern.n() != host.n_vertices()) {
    throw InvalidInstanceError("pattern must span the host");
  }
  std::mt19937_64 rng(options.seed);
  SpanningEmbedding out;
  const PatternClass cls = ClassifyPattern(pattern);
  out.kind = cls.kind;
  switch (cls.kind) {
    case PatternKind::kForest:
      out.partition = ForestPartition(pattern);
      break;
    case PatternKind::kFactor:
      out.partition = FactorPartition(cls.factor, cls.copies);
      break;
    case PatternKind::kBoundedDegree:
      out.partition =
          BoundedDegreePartition(pattern, rng, options.colouring).partition;
      break;
  }
  if (!ValidatePartition(pattern, out.partition).ok()) {
    throw InvariantViolationError("uniform partition failed validation");
  }
  HostPartition hp = SampleHostPartition(host, pattern, out.partition, rng);
  out.host_sample = hp.sample;
  const PartwiseResult pw =
      PartwiseEmbed(hp.host, pattern, out.partition, options.bipartite);
  out.embedding = pw.embedding;
  out.partwise_deviation = pw.deviation;
  out.level_errors = pw.level_errors;
  out.ledger = pw.ledger;
  out.ledger.partition =
      hp.sample.deviation_l1 / Normalize(host.labels()).scale;

  std::vector<Edge> image;
  for (const Edge& e : pattern.edges()) {
    image.emplace_back(out.embedding.map[e.u], out.embedding.map[e.v]);
  }
  out.report = Imbalance(host, image);
  if (out.report.total_l1 > out.ledger.Total() + 1e-6) {
    std::ostringstream msg;
    msg << "imbalance " << out.report.total_l1 << " exceeds ledger "
        << out.ledger.Total();
    throw InvariantViolationError(msg.str());
  }
  return out;
}

}  // namespace balrep
