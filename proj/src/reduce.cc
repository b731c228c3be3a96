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

#include "balrep/reduce.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace balrep {
namespace {

std::vector<int> RandomEquipartition(int parts, int per_part,
                                     std::mt19937_64& rng) {
  std::vector<int> order(parts * per_part);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> assignment(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    assignment[order[i]] = static_cast<int>(i) / per_part;
  }
  return assignment;
}

template <typename SumFn>
PartitionSample SampleUntil(int parts, int per_part, double threshold,
                            std::mt19937_64& rng, SumFn&& sum) {
  PartitionSample best;
  bool have = false;
  for (int t = 1; t <= kPartitionRetries; ++t) {
    PartitionSample s;
    s.assignment = RandomEquipartition(parts, per_part, rng);
    const Label x = sum(s.assignment);
    s.deviation_l2 = L2Norm(x);
    s.deviation_l1 = L1Norm(x);
    s.threshold = threshold;
    s.tries = t;
    if (s.deviation_l2 <= threshold) return s;
    if (!have || s.deviation_l2 < best.deviation_l2) {
      best = s;
      have = true;
    }
  }
  std::ostringstream msg;
  msg << "no equipartition within " << threshold << " after "
      << kPartitionRetries << " samples (best " << best.deviation_l2 << ")";
  throw PartitionRetryError(msg.str(), best);
}

// Labels on [n]^r, coordinate 0 most significant. Colour-backed when the
// source labels are.
struct PartiteTensor {
  int r = 0;
  int n = 0;
  int k = 0;
  std::vector<double> data;
  std::vector<int> colours;

  std::size_t cells() const {
    std::size_t c = 1;
    for (int i = 0; i < r; ++i) c *= n;
    return c;
  }
  const double* at(std::size_t cell) const { return &data[cell * k]; }
};

std::size_t CellOf(const std::vector<int>& tuple, int n) {
  std::size_t c = 0;
  for (int x : tuple) c = c * n + x;
  return c;
}

std::vector<std::vector<int>> SolvePartite(const PartiteTensor& t,
                                           const BipartiteOptions& options,
                                           Ledger& ledger,
                                           std::vector<double>& level_errors) {
  const int n = t.n;
  const int k = t.k;
  if (t.r == 2) {
    BipartiteInstance inst;
    if (!t.colours.empty()) {
      inst = BipartiteInstance::FromColours(n, t.colours, k);
    } else {
      EdgeLabels labels(k, static_cast<std::size_t>(n) * n);
      for (std::size_t e = 0; e < labels.size(); ++e) {
        std::copy(t.at(e), t.at(e) + k, labels.Mutable(e).begin());
      }
      inst = BipartiteInstance(n, std::move(labels));
    }
    const BipartiteSolution sol = SolveBipartite(inst, options);
    ledger += sol.ledger;
    return sol.matching.edges;
  }

  PartiteTensor h1;
  h1.r = t.r - 1;
  h1.n = n;
  h1.k = k;
  h1.data.assign(h1.cells() * k, 0.0);
  for (std::size_t cell = 0; cell < h1.cells(); ++cell) {
    double* dst = &h1.data[cell * k];
    for (int u = 0; u < n; ++u) {
      const double* src = t.at(cell * n + u);
      for (int i = 0; i < k; ++i) dst[i] += src[i];
    }
    for (int i = 0; i < k; ++i) dst[i] /= n;
  }
  const std::vector<std::vector<int>> m1 =
      SolvePartite(h1, options, ledger, level_errors);

  PartiteTensor h2;
  h2.r = 2;
  h2.n = n;
  h2.k = k;
  h2.data.resize(static_cast<std::size_t>(n) * n * k);
  if (!t.colours.empty()) h2.colours.resize(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    const std::size_t base = CellOf(m1[j], n) * n;
    for (int u = 0; u < n; ++u) {
      std::copy(t.at(base + u), t.at(base + u) + k,
                &h2.data[(static_cast<std::size_t>(j) * n + u) * k]);
      if (!t.colours.empty()) h2.colours[j * n + u] = t.colours[base + u];
    }
  }
  const std::vector<std::vector<int>> m2 =
      SolvePartite(h2, options, ledger, level_errors);

  Label diff(k, 0.0);
  std::vector<std::vector<int>> lifted;
  for (const auto& pair : m2) {
    const int j = pair[0], u = pair[1];
    std::vector<int> tuple = m1[j];
    tuple.push_back(u);
    const double* a = t.at(CellOf(tuple, n));
    const double* b = h1.at(CellOf(m1[j], n));
    for (int i = 0; i < k; ++i) diff[i] += a[i] - b[i];
    lifted.push_back(std::move(tuple));
  }
  level_errors.push_back(L1Norm(diff));
  std::sort(lifted.begin(), lifted.end());
  return lifted;
}

}  // namespace

std::vector<int> PartitionSample::Part(int p) const {
  std::vector<int> out;
  for (std::size_t v = 0; v < assignment.size(); ++v) {
    if (assignment[v] == p) out.push_back(static_cast<int>(v));
  }
  return out;
}

Label CrossingSum(const CompleteInstance& instance, const EdgeLabels& normalized,
                  const std::vector<int>& assignment) {
  const int n = instance.n_vertices();
  Label x(instance.k(), 0.0);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (assignment[u] != assignment[v]) {
        normalized.AddTo(instance.index(u, v), x);
      }
    }
  }
  return x;
}

PartitionSample SplitComplete(const CompleteInstance& instance,
                              std::mt19937_64& rng) {
  const int vertices = instance.n_vertices();
  if (vertices % 2 != 0) {
    throw InvalidInstanceError("complete host needs an even vertex count");
  }
  const int n = vertices / 2;
  const NormalizedLabels norm = Normalize(instance.labels());
  return SampleUntil(2, n, std::sqrt(2.0) * n, rng,
                     [&](const std::vector<int>& a) {
                       return CrossingSum(instance, norm.labels, a);
                     });
}

CompleteSolution SolveComplete(const CompleteInstance& instance,
                               const ReductionOptions& options) {
  std::mt19937_64 rng(options.seed);
  CompleteSolution sol;
  sol.partition = SplitComplete(instance, rng);
  const int n = instance.n_vertices() / 2;
  const std::vector<int> left = sol.partition.Part(0);
  const std::vector<int> right = sol.partition.Part(1);

  BipartiteInstance sub;
  const EdgeLabels& labels = instance.labels();
  if (labels.has_colours()) {
    std::vector<int> colours(static_cast<std::size_t>(n) * n);
    for (int l = 0; l < n; ++l) {
      for (int r = 0; r < n; ++r) {
        colours[l * n + r] = labels.colour(instance.index(left[l], right[r]));
      }
    }
    sub = BipartiteInstance::FromColours(n, std::move(colours), labels.k());
  } else {
    EdgeLabels rows(labels.k(), static_cast<std::size_t>(n) * n);
    for (int l = 0; l < n; ++l) {
      for (int r = 0; r < n; ++r) {
        const auto src = labels[instance.index(left[l], right[r])];
        std::copy(src.begin(), src.end(), rows.Mutable(l * n + r).begin());
      }
    }
    sub = BipartiteInstance(n, std::move(rows));
  }
  const BipartiteSolution inner = SolveBipartite(sub, options.bipartite);
  sol.ledger = inner.ledger;
  const double scale = Normalize(labels).scale;
  sol.ledger.partition = sol.partition.deviation_l1 / (n * scale);

  std::vector<Edge> edges;
  for (const auto& pair : inner.matching.edges) {
    edges.emplace_back(left[pair[0]], right[pair[1]]);
  }
  std::sort(edges.begin(), edges.end());
  for (const Edge& e : edges) sol.matching.edges.push_back({e.u, e.v});
  sol.report = Imbalance(instance, edges);
  if (sol.report.total_l1 > sol.ledger.Total() + 1e-6) {
    std::ostringstream msg;
    msg << "imbalance " << sol.report.total_l1 << " exceeds ledger "
        << sol.ledger.Total();
    throw InvariantViolationError(msg.str());
  }
  return sol;
}

Label TransversalSum(const HypergraphInstance& instance,
                     const EdgeLabels& normalized,
                     const std::vector<int>& assignment) {
  const int r = instance.r();
  std::vector<std::vector<int>> parts(r);
  for (std::size_t v = 0; v < assignment.size(); ++v) {
    parts[assignment[v]].push_back(static_cast<int>(v));
  }
  Label x(instance.k(), 0.0);
  std::vector<int> pick(r, 0), edge(r);
  const int n = instance.n();
  while (true) {
    for (int i = 0; i < r; ++i) edge[i] = parts[i][pick[i]];
    std::sort(edge.begin(), edge.end());
    normalized.AddTo(HypergraphInstance::Rank(edge), x);
    int i = r - 1;
    while (i >= 0 && ++pick[i] == n) pick[i--] = 0;
    if (i < 0) break;
  }
  return x;
}

PartitionSample SplitHypergraph(const HypergraphInstance& instance,
                                std::mt19937_64& rng) {
  const int r = instance.r();
  const int n = instance.n();
  const NormalizedLabels norm = Normalize(instance.labels());
  const double threshold =
      std::sqrt(2.0) * std::pow(static_cast<double>(r) * n, r - 1);
  return SampleUntil(r, n, threshold, rng, [&](const std::vector<int>& a) {
    return TransversalSum(instance, norm.labels, a);
  });
}

HypergraphSolution SolveHypergraph(const HypergraphInstance& instance,
                                   const ReductionOptions& options) {
  const int r = instance.r();
  const int n = instance.n();
  const int k = instance.k();
  if (r < 2) throw InvalidInstanceError("hypergraph solver needs r >= 2");
  std::mt19937_64 rng(options.seed);
  HypergraphSolution sol;
  sol.partition = SplitHypergraph(instance, rng);
  std::vector<std::vector<int>> parts(r);
  for (int p = 0; p < r; ++p) parts[p] = sol.partition.Part(p);

  const EdgeLabels& labels = instance.labels();
  PartiteTensor t;
  t.r = r;
  t.n = n;
  t.k = k;
  t.data.resize(t.cells() * k);
  if (labels.has_colours()) t.colours.resize(t.cells());
  std::vector<int> pick(r, 0), edge(r);
  for (std::size_t cell = 0; cell < t.cells(); ++cell) {
    std::size_t rest = cell;
    for (int i = r - 1; i >= 0; --i) {
      pick[i] = static_cast<int>(rest % n);
      rest /= n;
    }
    for (int i = 0; i < r; ++i) edge[i] = parts[i][pick[i]];
    std::sort(edge.begin(), edge.end());
    const std::size_t e = HypergraphInstance::Rank(edge);
    const auto h = labels[e];
    std::copy(h.begin(), h.end(), &t.data[cell * k]);
    if (labels.has_colours()) t.colours[cell] = labels.colour(e);
  }

  const std::vector<std::vector<int>> tuples =
      SolvePartite(t, options.bipartite, sol.ledger, sol.level_errors);
  const double scale = Normalize(labels).scale;
  sol.ledger.partition =
      sol.partition.deviation_l1 / (std::pow(n, r - 1) * scale);

  for (const auto& tuple : tuples) {
    std::vector<int> e(r);
    for (int i = 0; i < r; ++i) e[i] = parts[i][tuple[i]];
    std::sort(e.begin(), e.end());
    sol.matching.edges.push_back(std::move(e));
  }
  std::sort(sol.matching.edges.begin(), sol.matching.edges.end());
  sol.report = Imbalance(instance, sol.matching);
  if (sol.report.total_l1 > sol.ledger.Total() + 1e-6) {
    std::ostringstream msg;
    msg << "imbalance " << sol.report.total_l1 << " exceeds ledger "
        << sol.ledger.Total();
    throw InvariantViolationError(msg.str());
  }
  return sol;
}

}  // namespace balrep
