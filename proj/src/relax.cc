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

#include "balrep/relax.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

namespace balrep {
namespace {

constexpr double kPivotThreshold = 1e-12;

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) { Reset(); }
  void Reset() { std::iota(parent_.begin(), parent_.end(), 0); }
  int Find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
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

// Incremental spanning-forest builder over the 2n vertices of K_{n,n}
// (left l -> l, right r -> n + r).
class ForestBuilder {
 public:
  explicit ForestBuilder(int n)
      : n_(n), sets_(2 * n), adjacency_(2 * n), parent_(2 * n, -1),
        parent_edge_(2 * n, 0), depth_(2 * n, -1) {}

  void Reset() {
    sets_.Reset();
    for (int v : touched_) {
      adjacency_[v].clear();
      parent_[v] = -1;
      depth_[v] = -1;
    }
    touched_.clear();
    forest_.clear();
    closing_.clear();
  }

  // Returns true when the edge closed a cycle.
  bool Add(const SubgraphEdge& e) {
    const int a = e.left, b = n_ + e.right;
    if (sets_.Union(a, b)) {
      Touch(a);
      Touch(b);
      adjacency_[a].push_back({b, e.id});
      adjacency_[b].push_back({a, e.id});
      forest_.push_back(e.id);
      return false;
    }
    closing_.push_back(e);
    return true;
  }

  std::size_t closing_count() const { return closing_.size(); }

  CycleBasis Finish() {
    RootForest();
    CycleBasis basis;
    basis.forest = forest_;
    for (const SubgraphEdge& e : closing_) {
      basis.cycles.push_back(CycleOf(e));
    }
    return basis;
  }

 private:
  struct Arc {
    int to;
    std::size_t id;
  };

  void Touch(int v) {
    if (depth_[v] == -1 && adjacency_[v].empty()) {
      touched_.push_back(v);
      depth_[v] = -2;  // Touched, not yet rooted.
    }
  }

  void RootForest() {
    std::vector<int> queue;
    for (int root : touched_) {
      if (depth_[root] >= 0) continue;
      depth_[root] = 0;
      parent_[root] = -1;
      queue.assign(1, root);
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const int v = queue[head];
        for (const Arc& arc : adjacency_[v]) {
          if (depth_[arc.to] >= 0) continue;
          depth_[arc.to] = depth_[v] + 1;
          parent_[arc.to] = v;
          parent_edge_[arc.to] = arc.id;
          queue.push_back(arc.to);
        }
      }
    }
  }

  Cycle CycleOf(const SubgraphEdge& closing) const {
    // Walk closing edge left -> right, then the forest path right -> left.
    int a = n_ + closing.right;
    int b = closing.left;
    std::vector<std::size_t> from_a, from_b;
    while (depth_[a] > depth_[b]) {
      from_a.push_back(parent_edge_[a]);
      a = parent_[a];
    }
    while (depth_[b] > depth_[a]) {
      from_b.push_back(parent_edge_[b]);
      b = parent_[b];
    }
    while (a != b) {
      from_a.push_back(parent_edge_[a]);
      a = parent_[a];
      from_b.push_back(parent_edge_[b]);
      b = parent_[b];
    }
    Cycle cycle;
    cycle.closing_edge = closing.id;
    cycle.edges.reserve(1 + from_a.size() + from_b.size());
    cycle.edges.push_back({closing.id, +1});
    int sign = -1;
    for (std::size_t id : from_a) {
      cycle.edges.push_back({id, sign});
      sign = -sign;
    }
    for (auto it = from_b.rbegin(); it != from_b.rend(); ++it) {
      cycle.edges.push_back({*it, sign});
      sign = -sign;
    }
    return cycle;
  }

  int n_;
  DisjointSets sets_;
  std::vector<std::vector<Arc>> adjacency_;
  std::vector<int> parent_;
  std::vector<std::size_t> parent_edge_;
  std::vector<int> depth_;
  std::vector<int> touched_;
  std::vector<std::size_t> forest_;
  std::vector<SubgraphEdge> closing_;
};

// Arithmetic shims so the pivot code is shared by double and mpq_class.
int sgn(double x) { return (x > 0) - (x < 0); }
double AbsOf(double x) { return std::abs(x); }
mpq_class AbsOf(const mpq_class& x) { return abs(x); }
bool IsZero(double x) { return std::abs(x) <= kPivotThreshold; }
bool IsZero(const mpq_class& x) { return sgn(x) == 0; }
double ToDouble(double x) { return x; }
double ToDouble(const mpq_class& x) { return x.get_d(); }

// A nonzero a with sum_C a_C u_C = 0 for k x (k+1) column vectors u_C, by
// Gauss-Jordan elimination with partial pivoting. Returns empty when every
// column is a pivot column (impossible for k+1 columns in R^k).
template <typename S>
std::vector<S> NullVector(std::vector<std::vector<S>> columns, int k) {
  const int cols = static_cast<int>(columns.size());
  // rows[i][j] = columns[j][i]
  std::vector<std::vector<S>> rows(k, std::vector<S>(cols));
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < k; ++i) rows[i][j] = columns[j][i];
  }
  std::vector<int> pivot_col_of_row;
  std::vector<char> is_pivot(cols, 0);
  int row = 0;
  for (int col = 0; col < cols && row < k; ++col) {
    int best = -1;
    for (int r = row; r < k; ++r) {
      if (IsZero(rows[r][col])) continue;
      if (best == -1 || AbsOf(rows[r][col]) > AbsOf(rows[best][col])) best = r;
    }
    if (best == -1) continue;
    std::swap(rows[row], rows[best]);
    const S p = rows[row][col];
    for (int j = 0; j < cols; ++j) rows[row][j] /= p;
    for (int r = 0; r < k; ++r) {
      if (r == row || IsZero(rows[r][col])) continue;
      const S f = rows[r][col];
      for (int j = 0; j < cols; ++j) rows[r][j] -= f * rows[row][j];
    }
    is_pivot[col] = 1;
    pivot_col_of_row.push_back(col);
    ++row;
  }
  int free_col = -1;
  for (int j = 0; j < cols; ++j) {
    if (!is_pivot[j]) {
      free_col = j;
      break;
    }
  }
  if (free_col == -1) return {};
  std::vector<S> a(cols, S(0));
  a[free_col] = S(1);
  for (int r = 0; r < static_cast<int>(pivot_col_of_row.size()); ++r) {
    a[pivot_col_of_row[r]] = -rows[r][free_col];
  }
  return a;
}

struct AppliedPivot {
  std::vector<std::size_t> touched;
  std::size_t blocking_edge = 0;
};

// Applies the cycle-space move for `cycles` (exactly k+1 of them) to `w`.
template <typename S>
AppliedPivot ApplyPivot(const BipartiteInstance& instance, std::vector<S>& w,
                        std::span<const Cycle> cycles) {
  const int k = instance.k();
  std::vector<std::vector<S>> u(cycles.size(), std::vector<S>(k, S(0)));
  const EdgeLabels& labels = instance.labels();
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    if (labels.has_colours()) {
      std::vector<long> counts(k, 0);
      for (const CycleEdge& ce : cycles[c].edges) {
        counts[labels.colour(ce.id) - 1] += ce.sign;
      }
      for (int i = 0; i < k; ++i) u[c][i] = S(counts[i]);
      continue;
    }
    for (const CycleEdge& ce : cycles[c].edges) {
      const auto h = labels[ce.id];
      for (int i = 0; i < k; ++i) {
        if (ce.sign > 0) {
          u[c][i] += S(h[i]);
        } else {
          u[c][i] -= S(h[i]);
        }
      }
    }
  }
  const std::vector<S> a = NullVector<S>(u, k);
  if (a.empty()) {
    throw InvariantViolationError("cycle vectors have trivial null space");
  }

  // Net rate per edge; closing edges belong to exactly one selected cycle.
  std::vector<std::pair<std::size_t, S>> rate;
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    if (IsZero(a[c])) continue;
    for (const CycleEdge& ce : cycles[c].edges) {
      rate.emplace_back(ce.id, ce.sign > 0 ? S(a[c]) : S(-a[c]));
    }
  }
  std::sort(rate.begin(), rate.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::pair<std::size_t, S>> merged;
  for (auto& [id, r] : rate) {
    if (!merged.empty() && merged.back().first == id) {
      merged.back().second += r;
    } else {
      merged.emplace_back(id, r);
    }
  }

  AppliedPivot out;
  bool have = false;
  S step(0);
  for (const auto& [id, r] : merged) {
    if (IsZero(r)) continue;
    // Distance to the boundary in the moving direction, per unit rate.
    S limit = sgn(r) > 0 ? S((S(1) - w[id]) / r) : S(w[id] / (-r));
    if (!have || limit < step) {
      step = limit;
      out.blocking_edge = id;
      have = true;
    }
  }
  if (!have) {
    throw InvariantViolationError(
        "all net rates vanish; fundamental cycles should rule this out");
  }
  for (const auto& [id, r] : merged) {
    if (IsZero(r)) continue;
    w[id] += step * r;
    out.touched.push_back(id);
  }
  return out;
}

bool IsFractionalValue(double x) { return x > 0.0 && x < 1.0; }
bool IsFractionalValue(const mpq_class& x) { return sgn(x) > 0 && x < 1; }

// Float mode: snap to {0, 1}, and force the blocking edge onto its boundary.
void Snap(std::vector<double>& w, const AppliedPivot& pivot, double tol) {
  for (std::size_t id : pivot.touched) {
    double& x = w[id];
    if (x < tol) x = 0.0;
    if (x > 1.0 - tol) x = 1.0;
  }
  double& b = w[pivot.blocking_edge];
  if (b != 0.0 && b != 1.0) b = b < 0.5 ? 0.0 : 1.0;
}
void Snap(std::vector<mpq_class>&, const AppliedPivot&, double) {}

template <typename S>
void CheckBox(const std::vector<S>& w, const AppliedPivot& pivot) {
  for (std::size_t id : pivot.touched) {
    if (w[id] < 0 || w[id] > 1) {
      std::ostringstream msg;
      msg << "weight of edge " << id << " left [0,1]: " << ToDouble(w[id]);
      throw InvariantViolationError(msg.str());
    }
  }
}

template <typename S>
int RunRelax(const BipartiteInstance& instance, std::vector<S>& w,
             double snap_tolerance) {
  const int n = instance.n();
  const int k = instance.k();
  std::set<std::size_t> fractional;
  for (std::size_t e = 0; e < w.size(); ++e) {
    if (IsFractionalValue(w[e])) fractional.insert(fractional.end(), e);
  }
  ForestBuilder builder(n);
  int pivots = 0;
  const std::size_t need = static_cast<std::size_t>(k) + 1;
  while (true) {
    builder.Reset();
    for (std::size_t id : fractional) {
      SubgraphEdge e{id, static_cast<int>(id / n), static_cast<int>(id % n)};
      builder.Add(e);
      if (builder.closing_count() == need) break;
    }
    if (builder.closing_count() < need) break;
    const CycleBasis basis = builder.Finish();
    const AppliedPivot applied = ApplyPivot<S>(instance, w, basis.cycles);
    Snap(w, applied, snap_tolerance);
    CheckBox(w, applied);
    for (std::size_t id : applied.touched) {
      if (!IsFractionalValue(w[id])) fractional.erase(id);
    }
    ++pivots;
    if (pivots > n * n) {
      throw InvariantViolationError("relax exceeded |E| pivots");
    }
  }
  return pivots;
}

// Float mode leaves behind pendant fractional edges whose weight is rounding
// residue: a vertex with a single fractional edge has that weight within the
// vertex drift of 0 or 1. Round them away, peeling pendant trees leaf by leaf.
void PruneResidue(int n, std::vector<double>& w) {
  std::vector<int> degree(2 * n, 0);
  std::vector<std::vector<std::size_t>> incident(2 * n);
  for (std::size_t e = 0; e < w.size(); ++e) {
    if (!IsFractionalValue(w[e])) continue;
    for (int v : {static_cast<int>(e / n), n + static_cast<int>(e % n)}) {
      ++degree[v];
      incident[v].push_back(e);
    }
  }
  std::vector<int> stack;
  for (int v = 0; v < 2 * n; ++v) {
    if (degree[v] == 1) stack.push_back(v);
  }
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (degree[v] != 1) continue;
    for (std::size_t e : incident[v]) {
      if (!IsFractionalValue(w[e])) continue;
      w[e] = w[e] < 0.5 ? 0.0 : 1.0;
      for (int x : {static_cast<int>(e / n), n + static_cast<int>(e % n)}) {
        if (--degree[x] == 1) stack.push_back(x);
      }
      break;
    }
  }
}

bool UseRational(const BipartiteInstance& instance, NumericMode mode) {
  if (mode == NumericMode::kAuto) return instance.labels().has_colours();
  return mode == NumericMode::kRational;
}

}  // namespace

bool FractionalMatching::IsFractional(std::size_t e) const {
  if (exact) return IsFractionalValue(exact_weights[e]);
  return IsFractionalValue(weights[e]);
}

std::vector<std::size_t> FractionalMatching::FractionalEdges() const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < weights.size(); ++e) {
    if (IsFractional(e)) out.push_back(e);
  }
  return out;
}

CycleBasis FundamentalCycleBasis(int n, std::span<const SubgraphEdge> edges,
                                 std::size_t max_cycles) {
  ForestBuilder builder(n);
  for (const SubgraphEdge& e : edges) {
    if (e.left < 0 || e.left >= n || e.right < 0 || e.right >= n) {
      throw InvalidInstanceError("subgraph edge outside K_{n,n}");
    }
    builder.Add(e);
    if (builder.closing_count() >= max_cycles) break;
  }
  return builder.Finish();
}

int CyclomaticNumber(int n, std::span<const SubgraphEdge> edges) {
  DisjointSets sets(2 * n);
  std::vector<char> touched(2 * n, 0);
  int vertices = 0, merges = 0;
  for (const SubgraphEdge& e : edges) {
    for (int v : {e.left, n + e.right}) {
      if (!touched[v]) {
        touched[v] = 1;
        ++vertices;
      }
    }
    if (sets.Union(e.left, n + e.right)) ++merges;
  }
  const int components = vertices - merges;
  return static_cast<int>(edges.size()) - vertices + components;
}

FractionalMatching InitUniform(const BipartiteInstance& instance,
                               NumericMode mode) {
  const int n = instance.n();
  const std::size_t m = static_cast<std::size_t>(n) * n;
  FractionalMatching fm;
  fm.n = n;
  fm.exact = UseRational(instance, mode);
  fm.weights.assign(m, 1.0 / n);
  if (fm.exact) fm.exact_weights.assign(m, mpq_class(1, n));
  fm.target = instance.labels().Sum();
  for (double& x : fm.target) x /= n;
  return fm;
}

std::vector<SubgraphEdge> FractionalSubgraph(const FractionalMatching& fm) {
  std::vector<SubgraphEdge> out;
  for (std::size_t e : fm.FractionalEdges()) {
    out.push_back({e, static_cast<int>(e / fm.n), static_cast<int>(e % fm.n)});
  }
  return out;
}

PivotOutcome PivotStep(const BipartiteInstance& instance,
                       FractionalMatching& fm, const CycleBasis& basis) {
  const std::size_t need = static_cast<std::size_t>(instance.k()) + 1;
  if (basis.cycles.size() < need) return PivotOutcome::kTooFewCycles;
  std::span<const Cycle> cycles(basis.cycles.data(), need);
  if (fm.exact) {
    const AppliedPivot applied =
        ApplyPivot<mpq_class>(instance, fm.exact_weights, cycles);
    CheckBox(fm.exact_weights, applied);
    for (std::size_t id : applied.touched) {
      fm.weights[id] = fm.exact_weights[id].get_d();
    }
  } else {
    const AppliedPivot applied = ApplyPivot<double>(instance, fm.weights, cycles);
    Snap(fm.weights, applied, RelaxOptions{}.snap_tolerance);
    CheckBox(fm.weights, applied);
  }
  ++fm.pivots;
  return PivotOutcome::kApplied;
}

FractionalMatching Relax(const BipartiteInstance& instance,
                         const RelaxOptions& options) {
  FractionalMatching fm = InitUniform(instance, options.mode);
  if (fm.exact) {
    fm.pivots = RunRelax<mpq_class>(instance, fm.exact_weights,
                                    options.snap_tolerance);
    for (std::size_t e = 0; e < fm.weights.size(); ++e) {
      fm.weights[e] = fm.exact_weights[e].get_d();
    }
  } else {
    fm.pivots = RunRelax<double>(instance, fm.weights, options.snap_tolerance);
    PruneResidue(instance.n(), fm.weights);
    const RelaxReport report = CheckFractionalMatching(instance, fm);
    if (report.max_vertex_error > options.drift_limit ||
        report.target_error > options.drift_limit || !report.in_box) {
      std::ostringstream msg;
      msg << "relax drift exceeded: vertex " << report.max_vertex_error
          << ", target " << report.target_error;
      throw InvariantViolationError(msg.str());
    }
  }
  return fm;
}

RelaxReport CheckFractionalMatching(const BipartiteInstance& instance,
                                    const FractionalMatching& fm) {
  const int n = instance.n();
  const int k = instance.k();
  RelaxReport report;
  if (fm.exact) {
    std::vector<mpq_class> left(n), right(n), sum(k);
    std::vector<mpq_class> target(k);
    for (int l = 0; l < n; ++l) {
      for (int r = 0; r < n; ++r) {
        const std::size_t e = instance.index(l, r);
        const mpq_class& x = fm.exact_weights[e];
        if (sgn(x) < 0 || x > 1) report.in_box = false;
        left[l] += x;
        right[r] += x;
        for (int i = 0; i < k; ++i) {
          const mpq_class h(instance.labels()[e][i]);
          sum[i] += x * h;
          target[i] += h;
        }
      }
    }
    mpq_class worst(0);
    for (int v = 0; v < n; ++v) {
      worst = std::max<mpq_class>(worst, abs(left[v] - 1));
      worst = std::max<mpq_class>(worst, abs(right[v] - 1));
    }
    report.max_vertex_error = worst.get_d();
    mpq_class err(0);
    for (int i = 0; i < k; ++i) err += abs(sum[i] - target[i] / n);
    report.target_error = err.get_d();
  } else {
    std::vector<double> left(n, 0.0), right(n, 0.0);
    Label sum(k, 0.0);
    for (int l = 0; l < n; ++l) {
      for (int r = 0; r < n; ++r) {
        const std::size_t e = instance.index(l, r);
        const double x = fm.weights[e];
        if (x < 0.0 || x > 1.0) report.in_box = false;
        left[l] += x;
        right[r] += x;
        instance.labels().AddTo(e, sum, x);
      }
    }
    for (int v = 0; v < n; ++v) {
      report.max_vertex_error =
          std::max({report.max_vertex_error, std::abs(left[v] - 1.0),
                    std::abs(right[v] - 1.0)});
    }
    for (int i = 0; i < k; ++i) {
      report.target_error += std::abs(sum[i] - fm.target[i]);
    }
  }
  const auto sub = FractionalSubgraph(fm);
  report.fractional_edges = sub.size();
  report.cyclomatic = CyclomaticNumber(n, sub);
  return report;
}

}  // namespace balrep
