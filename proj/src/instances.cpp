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

#include "gbsgraph/instances.hpp"

#include <algorithm>
#include <numeric>

#include "gbsgraph/error.hpp"
#include "gbsgraph/linalg.hpp"

namespace gbsgraph {
namespace {

void require_size(std::size_t n) {
    if (n == 0 || n > kMaxVertices) {
        throw ValidationError("vertex count must lie in [1, " + std::to_string(kMaxVertices) + "]");
    }
}

void require_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError(std::string(name) + " must lie in [0, 1]");
    }
}

}  // namespace

ComplexMatrix random_complex_symmetric(std::size_t n, Rng& rng, double spectral_norm_target) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double re = u(rng);
            const double im = u(rng);
            m(i, j) = m(j, i) = {re, im};
        }
    }
    const double norm = spectral_norm(m);
    if (norm > 0.0) {
        m *= Complex{spectral_norm_target / norm};
    }
    return m;
}

Graph random_complex_graph(std::size_t n, std::uint64_t seed) {
    require_size(n);
    Rng rng = make_rng(seed, 0);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double re = u(rng);
            const double im = u(rng);
            m(i, j) = m(j, i) = {re, im};
        }
    }
    return Graph(std::move(m));
}

Graph zero_one_graph(std::size_t n, double edge_probability, std::uint64_t seed) {
    require_size(n);
    require_probability(edge_probability, "edge probability");
    Rng rng = make_rng(seed, 0);
    std::bernoulli_distribution edge(edge_probability);
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (edge(rng)) {
                m(i, j) = m(j, i) = 1.0;
            }
        }
    }
    return Graph(std::move(m));
}

PlantedInstance planted_clique(std::size_t n, std::size_t clique_size, double noise, std::uint64_t seed) {
    require_size(n);
    require_probability(noise, "noise edge probability");
    if (clique_size < 2 || clique_size > n) {
        throw ValidationError("clique size must lie in [2, n]");
    }
    Rng rng = make_rng(seed, 1);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::size_t> clique(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(clique_size));
    std::sort(clique.begin(), clique.end());

    ComplexMatrix m = zero_one_graph(n, noise, seed).adjacency();
    for (const std::size_t i : clique) {
        for (const std::size_t j : clique) {
            if (i != j) {
                m(i, j) = 1.0;
            }
        }
    }
    return {Graph(std::move(m)), std::move(clique)};
}

}  // namespace gbsgraph
