// Copyright 2026 The gbsgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gbsgraph/graph.hpp"
#include "gbsgraph/random.hpp"

namespace gbsgraph {

/// Complex symmetric matrix with independent real and imaginary parts uniform
/// on [-1, 1] (diagonal included), rescaled to the given spectral norm.
ComplexMatrix random_complex_symmetric(std::size_t n, Rng& rng, double spectral_norm_target);

/// Random complex weights on every pair, zero diagonal, no rescaling.
Graph random_complex_graph(std::size_t n, std::uint64_t seed);

/// Erdos-Renyi G(n, p) with unit weights.
Graph zero_one_graph(std::size_t n, double edge_probability, std::uint64_t seed);

struct PlantedInstance {
    Graph graph;
    std::vector<std::size_t> clique;  // increasing
};

/// G(n, noise) with a clique on `clique_size` randomly chosen vertices.
PlantedInstance planted_clique(std::size_t n, std::size_t clique_size, double noise, std::uint64_t seed);

}  // namespace gbsgraph
