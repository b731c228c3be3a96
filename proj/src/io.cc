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


#include "balrep/io.h"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace balrep {
namespace {

[[noreturn]] void Fail(const std::string& what) {
  throw InvalidInstanceError(what);
}

int GetInt(const Json& json, const char* key) {
  if (!json.contains(key) || !json[key].is_number_integer()) {
    Fail(std::string("missing integer field \"") + key + "\"");
  }
  return json[key].get<int>();
}

// Annotations in edge order, re-indexed by `slot` into storage order.
struct Annotations {
  bool colours = false;
  std::vector<int> colour;
  std::vector<Label> rows;
};

Annotations ReadAnnotations(const Json& json, int k,
                            const std::vector<std::size_t>& slot,
                            std::size_t storage) {
  const bool has_colours = json.contains("colours");
  const bool has_labels = json.contains("labels");
  if (has_colours == has_labels) {
    Fail("exactly one of \"colours\" and \"labels\" is required");
  }
  const Json& values = has_colours ? json["colours"] : json["labels"];
  if (!values.is_array() || values.size() != slot.size()) {
    Fail("annotation count differs from the edge count");
  }
  Annotations out;
  out.colours = has_colours;
  if (has_colours) {
    out.colour.assign(storage, 0);
    for (std::size_t i = 0; i < slot.size(); ++i) {
      if (!values[i].is_number_integer()) Fail("colours must be integers");
      const int c = values[i].get<int>();
      if (c < 1 || c > k) Fail("colour out of range");
      out.colour[slot[i]] = c;
    }
  } else {
    out.rows.assign(storage, Label(k, 0.0));
    for (std::size_t i = 0; i < slot.size(); ++i) {
      const Json& row = values[i];
      if (!row.is_array() || static_cast<int>(row.size()) != k) {
        Fail("label length differs from k");
      }
      for (int c = 0; c < k; ++c) {
        if (!row[c].is_number()) Fail("labels must be numbers");
        out.rows[slot[i]][c] = row[c].get<double>();
      }
    }
  }
  return out;
}

std::vector<int> ReadTuple(const Json& edge, std::size_t arity) {
  if (!edge.is_array() || edge.size() != arity) Fail("edge of the wrong arity");
  std::vector<int> out;
  for (const Json& x : edge) {
    if (!x.is_number_integer()) Fail("edge endpoints must be integers");
    out.push_back(x.get<int>());
  }
  return out;
}

void MarkSlot(std::vector<char>& used, std::size_t s) {
  if (used[s]) Fail("repeated edge");
  used[s] = 1;
}

Json Annotate(const EdgeLabels& labels, std::size_t e) {
  if (labels.has_colours()) return labels.colour(e);
  Json row = Json::array();
  for (double x : labels[e]) row.push_back(x);
  return row;
}

}  // namespace

const char* InstanceTypeName(const AnyInstance& instance) {
  switch (instance.index()) {
    case 0:
      return "complete";
    case 1:
      return "bipartite";
    case 2:
      return "multipartite";
    default:
      return "hypergraph";
  }
}

Json InstanceToJson(const AnyInstance& instance) {
  Json out;
  out["type"] = InstanceTypeName(instance);
  Json edges = Json::array();
  Json notes = Json::array();
  bool colours = false;
  std::visit(
      [&](const auto& inst) {
        using T = std::decay_t<decltype(inst)>;
        const EdgeLabels& labels = inst.labels();
        colours = labels.has_colours();
        out["k"] = inst.k();
        if constexpr (std::is_same_v<T, CompleteInstance>) {
          out["n"] = inst.n_vertices();
          for (std::size_t e = 0; e < labels.size(); ++e) {
            const Edge p = PairFromIndex(e, inst.n_vertices());
            edges.push_back({p.u, p.v});
            notes.push_back(Annotate(labels, e));
          }
        } else if constexpr (std::is_same_v<T, BipartiteInstance>) {
          const int n = inst.n();
          out["n"] = n;
          for (int l = 0; l < n; ++l) {
            for (int r = 0; r < n; ++r) {
              edges.push_back({l, n + r});
              notes.push_back(Annotate(labels, inst.index(l, r)));
            }
          }
        } else if constexpr (std::is_same_v<T, MultipartiteInstance>) {
          const int n = inst.n_vertices();
          out["n"] = n;
          out["parts"] = inst.parts();
          for (std::size_t e = 0; e < labels.size(); ++e) {
            const Edge p = PairFromIndex(e, n);
            if (inst.part_of(p.u) == inst.part_of(p.v)) continue;
            edges.push_back({p.u, p.v});
            notes.push_back(Annotate(labels, e));
          }
        } else {
          out["n"] = inst.n();
          out["r"] = inst.r();
          for (std::size_t e = 0; e < labels.size(); ++e) {
            edges.push_back(HypergraphInstance::Unrank(e, inst.r()));
            notes.push_back(Annotate(labels, e));
          }
        }
      },
      instance);
  out["edges"] = std::move(edges);
  out[colours ? "colours" : "labels"] = std::move(notes);
  return out;
}

AnyInstance InstanceFromJson(const Json& json) {
  if (!json.is_object()) Fail("instance must be a JSON object");
  if (!json.contains("type") || !json["type"].is_string()) {
    Fail("missing string field \"type\"");
  }
  const std::string type = json["type"].get<std::string>();
  const int n = GetInt(json, "n");
  const int k = GetInt(json, "k");
  if (k < 1) Fail("k must be positive");
  if (!json.contains("edges") || !json["edges"].is_array()) {
    Fail("missing array field \"edges\"");
  }
  const Json& edges = json["edges"];
  std::vector<std::size_t> slot;
  slot.reserve(edges.size());

  if (type == "complete") {
    if (n < 2) Fail("complete hosts need n >= 2");
    const std::size_t m = Binomial(n, 2);
    std::vector<char> used(m, 0);
    for (const Json& e : edges) {
      const std::vector<int> t = ReadTuple(e, 2);
      if (t[0] == t[1] || std::min(t[0], t[1]) < 0 || std::max(t[0], t[1]) >= n) {
        Fail("edge out of range or a loop");
      }
      slot.push_back(PairIndex(t[0], t[1], n));
      MarkSlot(used, slot.back());
    }
    if (slot.size() != m) Fail("complete host is missing edges");
    Annotations a = ReadAnnotations(json, k, slot, m);
    if (a.colours) return CompleteInstance::FromColours(n, std::move(a.colour), k);
    return CompleteInstance(n, EdgeLabels::FromRows(a.rows, k));
  }
  if (type == "bipartite") {
    if (n < 1) Fail("bipartite hosts need n >= 1");
    const std::size_t m = static_cast<std::size_t>(n) * n;
    std::vector<char> used(m, 0);
    for (const Json& e : edges) {
      const std::vector<int> t = ReadTuple(e, 2);
      const int l = std::min(t[0], t[1]), r = std::max(t[0], t[1]) - n;
      if (l < 0 || l >= n || r < 0 || r >= n) {
        Fail("bipartite edge must join 0..n-1 to n..2n-1");
      }
      slot.push_back(static_cast<std::size_t>(l) * n + r);
      MarkSlot(used, slot.back());
    }
    if (slot.size() != m) Fail("bipartite host is missing edges");
    Annotations a = ReadAnnotations(json, k, slot, m);
    if (a.colours) return BipartiteInstance::FromColours(n, std::move(a.colour), k);
    return BipartiteInstance(n, EdgeLabels::FromRows(a.rows, k));
  }
  if (type == "multipartite") {
    if (n < 2) Fail("multipartite hosts need n >= 2");
    if (!json.contains("parts") || !json["parts"].is_array()) {
      Fail("multipartite hosts need \"parts\"");
    }
    std::vector<std::vector<int>> parts;
    std::vector<int> part_of(n, -1);
    for (const Json& p : json["parts"]) {
      if (!p.is_array()) Fail("parts must be arrays");
      parts.emplace_back();
      for (const Json& v : p) {
        if (!v.is_number_integer()) Fail("part members must be integers");
        const int x = v.get<int>();
        if (x < 0 || x >= n || part_of[x] != -1) Fail("parts do not partition [n]");
        part_of[x] = static_cast<int>(parts.size()) - 1;
        parts.back().push_back(x);
      }
    }
    if (std::count(part_of.begin(), part_of.end(), -1) != 0) {
      Fail("parts do not partition [n]");
    }
    const std::size_t m = Binomial(n, 2);
    std::vector<char> used(m, 0);
    std::size_t cross = 0;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) cross += part_of[u] != part_of[v];
    }
    for (const Json& e : edges) {
      const std::vector<int> t = ReadTuple(e, 2);
      if (t[0] == t[1] || std::min(t[0], t[1]) < 0 || std::max(t[0], t[1]) >= n) {
        Fail("edge out of range or a loop");
      }
      if (part_of[t[0]] == part_of[t[1]]) Fail("edge inside a part");
      slot.push_back(PairIndex(t[0], t[1], n));
      MarkSlot(used, slot.back());
    }
    if (slot.size() != cross) Fail("multipartite host is missing edges");
    Annotations a = ReadAnnotations(json, k, slot, m);
    if (a.colours) {
      // Intra-part pairs carry no label, so colours become basis vectors.
      a.rows.assign(m, Label(k, 0.0));
      for (std::size_t s : slot) a.rows[s][a.colour[s] - 1] = 1.0;
    }
    return MultipartiteInstance(std::move(parts), EdgeLabels::FromRows(a.rows, k));
  }
  if (type == "hypergraph") {
    const int r = GetInt(json, "r");
    if (r < 2 || n < 1) Fail("hypergraph hosts need r >= 2 and n >= 1");
    const int vertices = r * n;
    const std::size_t m = Binomial(vertices, r);
    std::vector<char> used(m, 0);
    for (const Json& e : edges) {
      std::vector<int> t = ReadTuple(e, r);
      std::sort(t.begin(), t.end());
      if (t.front() < 0 || t.back() >= vertices ||
          std::adjacent_find(t.begin(), t.end()) != t.end()) {
        Fail("hyperedge out of range or with a repeated vertex");
      }
      slot.push_back(HypergraphInstance::Rank(t));
      MarkSlot(used, slot.back());
    }
    if (slot.size() != m) Fail("hypergraph host is missing edges");
    Annotations a = ReadAnnotations(json, k, slot, m);
    if (a.colours) {
      return HypergraphInstance(r, n, EdgeLabels::FromColours(std::move(a.colour), k));
    }
    return HypergraphInstance(r, n, EdgeLabels::FromRows(a.rows, k));
  }
  Fail("unknown instance type \"" + type + "\"");
}

Json PathToJson(const PathInstance& path, int k) {
  Json out;
  out["type"] = "path";
  out["k"] = k;
  out["alpha"] = path.alpha;
  out["labels"] = path.labels;
  return out;
}

PathInstance PathFromJson(const Json& json, int* k) {
  if (!json.is_object() || json.value("type", "") != "path") {
    Fail("expected a path instance");
  }
  *k = GetInt(json, "k");
  if (!json.contains("alpha") || !json["alpha"].is_number()) {
    Fail("missing number field \"alpha\"");
  }
  PathInstance path;
  path.alpha = json["alpha"].get<double>();
  if (!json.contains("labels") || !json["labels"].is_array()) {
    Fail("missing array field \"labels\"");
  }
  for (const Json& row : json["labels"]) {
    if (!row.is_array()) Fail("labels must be arrays");
    Label l;
    for (const Json& x : row) {
      if (!x.is_number()) Fail("labels must be numbers");
      l.push_back(x.get<double>());
    }
    path.labels.push_back(std::move(l));
  }
  path.Validate(*k);
  return path;
}

Json PatternToJson(const PatternGraph& pattern) {
  Json out;
  out["n"] = pattern.n();
  Json edges = Json::array();
  for (const Edge& e : pattern.edges()) edges.push_back({e.u, e.v});
  out["edges"] = std::move(edges);
  return out;
}

PatternGraph PatternFromJson(const Json& json) {
  if (!json.is_object()) Fail("pattern must be a JSON object");
  const int n = GetInt(json, "n");
  if (!json.contains("edges") || !json["edges"].is_array()) {
    Fail("missing array field \"edges\"");
  }
  std::vector<Edge> edges;
  for (const Json& e : json["edges"]) {
    const std::vector<int> t = ReadTuple(e, 2);
    edges.emplace_back(t[0], t[1]);
  }
  return PatternGraph(n, std::move(edges));
}

Json MatchingToJson(const Matching& matching) { return matching.edges; }

Matching MatchingFromJson(const Json& json) {
  if (!json.is_array()) Fail("matching must be an array of tuples");
  Matching m;
  for (const Json& e : json) {
    if (!e.is_array()) Fail("matching edges must be arrays");
    m.edges.push_back(ReadTuple(e, e.size()));
  }
  return m;
}

Json ReportToJson(const ImbalanceReport& report) {
  Json out;
  out["per_coordinate"] = report.per_coordinate;
  out["total_l1"] = report.total_l1;
  return out;
}

Json LedgerToJson(const Ledger& ledger) {
  Json out;
  out["relax"] = ledger.relax;
  out["necklace"] = ledger.necklace;
  out["deleted"] = ledger.deleted;
  out["partition"] = ledger.partition;
  out["completion"] = ledger.completion;
  out["total"] = ledger.Total();
  return out;
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    Fail(path + ": " + e.what());
  }
}

}  // namespace balrep
