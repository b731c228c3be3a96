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


// Random instance samplers.

#ifndef BALREP_GENERATE_H_
#define BALREP_GENERATE_H_

#include <random>
#include <vector>

#include "balrep/core.h"
#include "balrep/embed.h"

namespace balrep {

// A uniformly shuffled multiset with every colour of [k] used m / k times.
// When k does not divide m, throws InvalidInstanceError unless allow_near,
// in which case the first m mod k colours get one extra edge.
std::vector<int> BalancedColours(std::size_t m, int k, std::mt19937_64& rng,
                                 bool allow_near = false);

// Labels with coordinates uniform in [0, 1).
EdgeLabels RandomVectorLabels(std::size_t m, int k, std::mt19937_64& rng);

CompleteInstance RandomBalancedComplete(int n_vertices, int k,
                                        std::mt19937_64& rng,
                                        bool allow_near = false);
BipartiteInstance RandomBalancedBipartite(int n, int k, std::mt19937_64& rng,
                                          bool allow_near = false);
HypergraphInstance RandomBalancedHypergraph(int r, int n, int k,
                                            std::mt19937_64& rng,
                                            bool allow_near = false);

// Hamiltonian cycle 0..n-1 plus a uniform perfect matching on chords, so
// every vertex has degree 3. Needs an even n >= 6.
PatternGraph RandomCubicPattern(int n, std::mt19937_64& rng);

}  // namespace balrep

#endif  // BALREP_GENERATE_H_
