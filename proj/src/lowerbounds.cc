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


#include "balrep/lowerbounds.h"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace balrep {
namespace {

int Mod(long long a, int k) { return static_cast<int>(((a % k) + k) % k); }

// Colour i + j (mod k) written in 1..k.
int BlockColour(int i, int j, int k) {
  const int c = Mod(i + j, k);
  return c == 0 ? k : c;
}

bool IsBipartite(const ConstructionSpec& spec) {
  return spec.family != ConstructionFamily::kKnModular;
}

std::vector<int> BlocksFromSizes(const std::vector<int>& sizes) {
  std::vector<int> block_of;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    block_of.insert(block_of.end(), sizes[b], static_cast<int>(b) + 1);
  }
  return block_of;
}

// First vertex of block b (1-based) among vertices [begin, end).
int FirstOf(const std::vector<int>& block_of, int b, int begin = 0) {
  for (std::size_t v = begin; v < block_of.size(); ++v) {
    if (block_of[v] == b) return static_cast<int>(v);
  }
  throw InvariantViolationError("empty block");
}

void CheckBalanced(const EdgeLabels& labels) {
  if (!IsColourBalanced(labels)) {
    throw InvariantViolationError("generated colouring is not colour-balanced");
  }
}

}  // namespace

const char* ConstructionFamilyName(ConstructionFamily family) {
  switch (family) {
    case ConstructionFamily::kKnnSqrt:
      return "knn-sqrt";
    case ConstructionFamily::kKnnModular:
      return "knn-mod";
    case ConstructionFamily::kKnModular:
      return "kn";
  }
  return "unknown";
}

int ConstructionSpec::BlockSize(int block) const {
  return static_cast<int>(std::count(block_of.begin(), block_of.end(), block));
}

int SpecColour(const ConstructionSpec& spec, int u, int v) {
  const bool bipartite = IsBipartite(spec);
  const int side = bipartite ? static_cast<int>(spec.block_of.size()) / 2 : 0;
  for (const Recolouring& r : spec.recoloured) {
    if (bipartite ? (r.u == u && r.v == v)
                  : Edge(r.u, r.v) == Edge(u, v)) {
      return r.to;
    }
  }
  const int i = spec.block_of[u];
  const int j = spec.block_of[side + v];
  if (spec.family != ConstructionFamily::kKnnSqrt) {
    return BlockColour(i, j, spec.k);
  }
  const int blocks = 2 * spec.m;
  if (i == j) return blocks * (blocks - 1) / 2 + (i + 1) / 2;
  const int a = std::min(i, j), b = std::max(i, j);
  // Lexicographic rank of {a, b} among pairs of [blocks], 1-based.
  int rank = 0;
  for (int x = 1; x < a; ++x) rank += blocks - x;
  return rank + (b - a);
}

GeneratedBipartite GenKnnSqrt(int m, int t) {
  if (m < 1 || t < 1 || t % 2 == 0) {
    throw InvalidInstanceError("knn-sqrt needs m >= 1 and odd t >= 1");
  }
  GeneratedBipartite out;
  ConstructionSpec& spec = out.spec;
  spec.family = ConstructionFamily::kKnnSqrt;
  spec.m = m;
  spec.k = 2 * m * m;
  spec.t = t;
  spec.deltas.assign(4 * m, 0);
  const std::vector<int> side = BlocksFromSizes(std::vector<int>(2 * m, m * t));
  spec.block_of = side;
  spec.block_of.insert(spec.block_of.end(), side.begin(), side.end());
  const int n = spec.k * t;
  std::vector<int> colours(static_cast<std::size_t>(n) * n);
  for (int l = 0; l < n; ++l) {
    for (int r = 0; r < n; ++r) colours[l * n + r] = SpecColour(spec, l, r);
  }
  out.instance = BipartiteInstance::FromColours(n, std::move(colours), spec.k);
  CheckBalanced(out.instance.labels());
  return out;
}

GeneratedBipartite GenKnnModular(int k, int t) {
  if (k < 2 || t < 1) {
    throw InvalidInstanceError("knn-mod needs k >= 2 and t >= 1");
  }
  GeneratedBipartite out;
  ConstructionSpec& spec = out.spec;
  spec.family = ConstructionFamily::kKnnModular;
  spec.k = k;
  spec.t = t;
  spec.deltas.assign(2 * k, 0);
  if (!(k == 2 && t % 2 == 1)) {
    spec.deltas[k] = -1;
    spec.deltas[2 * k - 1] = 1;
  }
  std::vector<int> left(k), right(k);
  for (int i = 0; i < k; ++i) {
    left[i] = t + spec.deltas[i];
    right[i] = t + spec.deltas[k + i];
  }
  spec.block_of = BlocksFromSizes(left);
  const std::vector<int> r = BlocksFromSizes(right);
  spec.block_of.insert(spec.block_of.end(), r.begin(), r.end());
  const int n = k * t;
  std::vector<int> colours(static_cast<std::size_t>(n) * n);
  for (int l = 0; l < n; ++l) {
    for (int b = 0; b < n; ++b) colours[l * n + b] = SpecColour(spec, l, b);
  }
  out.instance = BipartiteInstance::FromColours(n, std::move(colours), k);
  CheckBalanced(out.instance.labels());
  return out;
}

GeneratedComplete GenKn(int k, int t) {
  if (k < 3 || t < 1) throw InvalidInstanceError("kn needs k >= 3 and t >= 1");
  GeneratedComplete out;
  ConstructionSpec& spec = out.spec;
  spec.family = ConstructionFamily::kKnModular;
  spec.k = k;
  spec.t = t;
  spec.deltas.assign(k, 0);
  if (k % 2 == 1) {
    spec.deltas[0] = -1;
    spec.deltas[k - 1] = 1;
  } else if (t % 2 == 0) {
    spec.deltas[1] = 1;
    spec.deltas[k - 1] = -1;
  }
  std::vector<int> sizes(k);
  for (int i = 0; i < k; ++i) sizes[i] = 2 * t + spec.deltas[i];
  spec.block_of = BlocksFromSizes(sizes);

  if (k % 2 == 1) {
    spec.recoloured.push_back(
        {FirstOf(spec.block_of, 2), FirstOf(spec.block_of, k), 2, 1});
  } else {
    const int v = FirstOf(spec.block_of, k);
    const int last = t % 2 == 1 ? k - 1 : k - 3;
    for (int i = 1; i <= last; i += 2) {
      const int first = FirstOf(spec.block_of, i);
      for (int x = 0; x < t; ++x) spec.recoloured.push_back({first + x, v, i, i + 1});
    }
    if (t % 2 == 0) {
      const int first = FirstOf(spec.block_of, k - 1);
      for (int x = 0; x < t - 1; ++x) {
        spec.recoloured.push_back({first + x, v, k - 1, k});
      }
      spec.recoloured.push_back({first + t - 1, v, k - 1, 2});
    }
  }
  for (Recolouring& r : spec.recoloured) {
    if (r.u > r.v) std::swap(r.u, r.v);
  }
  const int n = 2 * k * t;
  std::vector<int> colours(Binomial(n, 2));
  for (std::size_t e = 0; e < colours.size(); ++e) {
    const Edge p = PairFromIndex(e, n);
    colours[e] = SpecColour(spec, p.u, p.v);
  }
  out.instance = CompleteInstance::FromColours(n, std::move(colours), k);
  CheckBalanced(out.instance.labels());
  return out;
}

std::vector<std::int64_t> ColourCounts(const EdgeLabels& labels) {
  if (!labels.has_colours()) {
    throw InvalidInstanceError("colour counts need a colouring");
  }
  std::vector<std::int64_t> count(labels.k(), 0);
  for (int c : labels.colours()) ++count[c - 1];
  return count;
}

bool IsColourBalanced(const EdgeLabels& labels) {
  const std::vector<std::int64_t> count = ColourCounts(labels);
  return std::adjacent_find(count.begin(), count.end(),
                            std::not_equal_to<>()) == count.end();
}

ResidueReport VerifyModInvariant(const ConstructionSpec& spec,
                                 const Matching& matching) {
  if (spec.family == ConstructionFamily::kKnnSqrt) {
    throw InvalidInstanceError("knn-sqrt has no block residue");
  }
  const int k = spec.k;
  const bool bipartite = IsBipartite(spec);
  const int vertices = static_cast<int>(spec.block_of.size());
  if (bipartite ? !IsPerfectBipartiteMatching(matching, vertices / 2)
                : !IsPerfectMatching(matching, vertices)) {
    throw InvalidInstanceError("matching is not perfect on the construction");
  }
  ResidueReport out;
  long long direct = 0;
  for (const auto& e : matching.edges) direct += SpecColour(spec, e[0], e[1]);
  out.direct = Mod(direct, k);

  long long block = 0;
  for (int i = 1; i <= k; ++i) block += static_cast<long long>(i) * spec.BlockSize(i);
  long long correction = 0;
  std::map<std::pair<int, int>, int> shift;
  for (const Recolouring& r : spec.recoloured) {
    shift[{r.u, r.v}] = r.to - r.from;
  }
  for (const auto& e : matching.edges) {
    const std::pair<int, int> key =
        bipartite ? std::make_pair(e[0], e[1])
                  : std::make_pair(std::min(e[0], e[1]), std::max(e[0], e[1]));
    const auto it = shift.find(key);
    if (it != shift.end()) correction += it->second;
  }
  out.formula = Mod(block + correction, k);
  out.agree = out.direct == out.formula;
  out.balanced_residue =
      Mod(static_cast<long long>(spec.t) * k * (k + 1) / 2, k);

  const int side = bipartite ? vertices / 2 : 0;
  std::vector<char> used(vertices, 0), seen(k, 0);
  auto visit = [&](auto&& self, std::size_t from, long long acc) -> void {
    seen[Mod(acc, k)] = 1;
    for (std::size_t i = from; i < spec.recoloured.size(); ++i) {
      const Recolouring& r = spec.recoloured[i];
      const int a = r.u, b = side + r.v;
      if (used[a] || used[b]) continue;
      used[a] = used[b] = 1;
      self(self, i + 1, acc + r.to - r.from);
      used[a] = used[b] = 0;
    }
  };
  visit(visit, 0, block);
  for (int r = 0; r < k; ++r) {
    if (seen[r]) out.attainable.push_back(r);
  }
  out.balanced_attainable = seen[out.balanced_residue] != 0;
  return out;
}

}  // namespace balrep
