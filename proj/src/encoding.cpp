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

#include "gbsgraph/encoding.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "gbsgraph/error.hpp"
#include "gbsgraph/linalg.hpp"

namespace gbsgraph {
namespace {

// Scale just below the pole used to report the supremum of reachable clicks.
constexpr double kSupremumFraction = 1.0 - 1e-9;
constexpr double kClickTolerance = 1e-4;

DeviceParams device_from_takagi(const TakagiFactorization& tk, double scale) {
    DeviceParams p;
    p.interferometer = tk.unitary;
    p.scale = scale;
    p.squeezing.reserve(tk.values.size());
    for (const double lambda : tk.values) {
        p.squeezing.push_back(std::atanh(scale * lambda));
    }
    return p;
}

double lossless_clicks(const TakagiFactorization& tk, double scale) {
    return expected_clicks(state_from_device(device_from_takagi(tk, scale).device()));
}

}  // namespace

double max_scale(const Graph& graph) {
    const double lambda_max = spectral_norm(graph.adjacency());
    return lambda_max > 0.0 ? 1.0 / lambda_max : std::numeric_limits<double>::infinity();
}

DeviceParams encode_graph(const Graph& graph, double scale) {
    if (graph.vertex_count() == 0) {
        throw ValidationError("cannot encode an empty graph");
    }
    const TakagiFactorization tk = takagi(graph.adjacency());
    const double lambda_max = tk.values.front();
    if (!(scale > 0.0) || !(scale * lambda_max < 1.0)) {
        std::ostringstream msg;
        msg << "scale " << scale << " outside (0, " << (lambda_max > 0.0 ? 1.0 / lambda_max : INFINITY) << ")";
        throw ValidationError(msg.str());
    }
    return device_from_takagi(tk, scale);
}

double expected_clicks_at_scale(const Graph& graph, double scale) {
    return expected_clicks(state_from_device(encode_graph(graph, scale).device()));
}

double choose_scale(const Graph& graph, double target_mean_clicks) {
    const std::size_t n = graph.vertex_count();
    if (!(target_mean_clicks > 0.0) || !(target_mean_clicks < static_cast<double>(n))) {
        throw ValidationError("target mean clicks must lie in (0, n)");
    }
    const TakagiFactorization tk = takagi(graph.adjacency());
    const double lambda_max = tk.values.front();
    if (lambda_max <= 0.0) {
        throw ValidationError("target mean clicks unreachable: the graph has no weight (supremum 0)");
    }
    double hi = kSupremumFraction / lambda_max;
    const double supremum = lossless_clicks(tk, hi);
    if (supremum < target_mean_clicks - kClickTolerance) {
        std::ostringstream msg;
        msg << "target mean clicks " << target_mean_clicks << " unreachable; supremum is " << supremum;
        throw ValidationError(msg.str());
    }
    double lo = 0.0;
    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const double clicks = lossless_clicks(tk, mid);
        if (std::abs(clicks - target_mean_clicks) < 1e-9 || hi - lo < 1e-15 * hi) {
            break;
        }
        if (clicks < target_mean_clicks) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return mid;
}

Graph subgraph(const Graph& graph, const ClickPattern& pattern) {
    if (pattern.modes() != graph.vertex_count()) {
        throw ValidationError("pattern length does not match the vertex count");
    }
    return Graph(graph.induced(pattern.clicked_modes()));
}

}  // namespace gbsgraph
