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
#include <span>
#include <vector>

#include "gbsgraph/matrix.hpp"

namespace gbsgraph {

/// Largest graph the desk-scale toolkit accepts (one mode per vertex).
inline constexpr std::size_t kMaxVertices = 64;

/// Undirected graph given by a complex symmetric adjacency matrix.
class Graph {
   public:
    Graph() = default;
    /// Throws ValidationError unless the matrix is square, symmetric within
    /// 1e-10 and has at most kMaxVertices rows.
    explicit Graph(ComplexMatrix adjacency);

    std::size_t vertex_count() const { return adjacency_.rows(); }
    const ComplexMatrix& adjacency() const { return adjacency_; }
    Complex weight(std::size_t i, std::size_t j) const { return adjacency_(i, j); }

    /// True when every weight is real and nonnegative (imaginary parts below 1e-12).
    bool has_nonnegative_real_weights() const;

    /// Induced adjacency on the given vertices, in the given order.
    ComplexMatrix induced(std::span<const std::size_t> vertices) const { return adjacency_.principal(vertices); }

   private:
    ComplexMatrix adjacency_;
};

/// Throws ValidationError unless every vertex is < n and no vertex repeats.
void validate_subset(std::span<const std::size_t> subset, std::size_t n);

}  // namespace gbsgraph
