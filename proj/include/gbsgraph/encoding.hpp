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

#include <vector>

#include "gbsgraph/click_pattern.hpp"
#include "gbsgraph/gaussian.hpp"
#include "gbsgraph/graph.hpp"

namespace gbsgraph {

/// Device that realizes A = scale * adjacency: the Takagi factorization
/// adjacency = U diag(lambda) U^T gives r_i = atanh(scale * lambda_i).
struct DeviceParams {
    std::vector<double> squeezing;
    ComplexMatrix interferometer;
    double scale = 0.0;

    Device device() const { return {squeezing, interferometer}; }
};

/// Largest admissible scale, 1 / lambda_max (infinity for the empty-weight graph).
double max_scale(const Graph& graph);

/// Requires 0 < scale < 1 / lambda_max.
DeviceParams encode_graph(const Graph& graph, double scale);

/// Expected click count of the lossless device encoded at `scale`.
double expected_clicks_at_scale(const Graph& graph, double scale);

/// Scale whose lossless encoded device has `target_mean_clicks` expected
/// clicks (within 1e-4), by bisection on (0, 1 / lambda_max). Throws
/// ValidationError naming the supremum when the target cannot be reached.
double choose_scale(const Graph& graph, double target_mean_clicks);

/// Induced subgraph on the clicked vertices.
Graph subgraph(const Graph& graph, const ClickPattern& pattern);

}  // namespace gbsgraph
