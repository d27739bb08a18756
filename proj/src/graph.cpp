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

#include "gbsgraph/graph.hpp"

#include <string>

#include "gbsgraph/error.hpp"
#include "gbsgraph/linalg.hpp"

namespace gbsgraph {

Graph::Graph(ComplexMatrix adjacency) : adjacency_(std::move(adjacency)) {
    if (!adjacency_.is_square()) {
        throw ValidationError("adjacency matrix is not square");
    }
    if (adjacency_.rows() > kMaxVertices) {
        throw ValidationError("graph has " + std::to_string(adjacency_.rows()) + " vertices; the limit is " +
                              std::to_string(kMaxVertices));
    }
    if (!adjacency_.all_finite()) {
        throw ValidationError("adjacency matrix has non-finite entries");
    }
    if (!is_symmetric(adjacency_, 1e-10)) {
        throw ValidationError("adjacency matrix is not symmetric");
    }
}

bool Graph::has_nonnegative_real_weights() const {
    for (const auto& w : adjacency_.entries()) {
        if (std::abs(w.imag()) > 1e-12 || w.real() < 0.0) {
            return false;
        }
    }
    return true;
}

void validate_subset(std::span<const std::size_t> subset, std::size_t n) {
    std::vector<bool> seen(n, false);
    for (const std::size_t v : subset) {
        if (v >= n) {
            throw ValidationError("vertex " + std::to_string(v) + " out of range for " + std::to_string(n) +
                                  " vertices");
        }
        if (seen[v]) {
            throw ValidationError("vertex " + std::to_string(v) + " repeated in subset");
        }
        seen[v] = true;
    }
}

}  // namespace gbsgraph
