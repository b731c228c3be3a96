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


// JSON encodings of instances and solutions.
//
// Instances follow
//   {"type": "complete|bipartite|multipartite|hypergraph", "n", "k", "r"?,
//    "parts"?, "edges": [[u, v, ...], ...], "colours"? | "labels"?}
// with exactly one of "colours"/"labels"; entry i annotates edge i. Bipartite
// hosts number the left side 0..n-1 and the right side n..2n-1. Hypergraph
// hosts have r * n vertices. Unknown keys (such as "meta") are ignored.

#ifndef BALREP_IO_H_
#define BALREP_IO_H_

#include <string>
#include <variant>

#include "balrep/bipartite.h"
#include "balrep/core.h"
#include "balrep/embed.h"
#include "balrep/necklace.h"
#include "json.hpp"

namespace balrep {

using Json = nlohmann::ordered_json;

using AnyInstance = std::variant<CompleteInstance, BipartiteInstance,
                                 MultipartiteInstance, HypergraphInstance>;

const char* InstanceTypeName(const AnyInstance& instance);

// Edges are written in storage order (pair rank, l * n + r, colex rank).
// Multipartite hosts list cross-part pairs only.
Json InstanceToJson(const AnyInstance& instance);

// Throws InvalidInstanceError on schema violations, missing or repeated
// edges, or bad annotations.
AnyInstance InstanceFromJson(const Json& json);

// {"type": "path", "k", "alpha", "labels": [[...], ...]}
Json PathToJson(const PathInstance& path, int k);
PathInstance PathFromJson(const Json& json, int* k);

// {"n", "edges"}
Json PatternToJson(const PatternGraph& pattern);
PatternGraph PatternFromJson(const Json& json);

Json MatchingToJson(const Matching& matching);
Matching MatchingFromJson(const Json& json);
Json ReportToJson(const ImbalanceReport& report);
Json LedgerToJson(const Ledger& ledger);

// Reads and parses a file; throws InvalidInstanceError on I/O or syntax
// errors.
Json ReadJsonFile(const std::string& path);

}  // namespace balrep

#endif  // BALREP_IO_H_
