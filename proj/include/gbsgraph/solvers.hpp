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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gbsgraph/graph.hpp"
#include "gbsgraph/sampler.hpp"

namespace gbsgraph {

enum class ObjectiveKind { MaxHaf, Density };

std::string_view to_string(ObjectiveKind kind);
/// Accepts "maxhaf"/"max-haf" and "density".
ObjectiveKind parse_objective_kind(std::string_view text);

/// W(G_S) = |sum over i, j in S of w_ij|, both orders of each edge counted.
double density(const Graph& graph, std::span<const std::size_t> subset);

/// Objective over k-subsets. MaxHaf scores |Haf|^2 and needs even k.
class Objective {
   public:
    /// Throws ValidationError unless 0 < k < n (and k even for MaxHaf).
    Objective(ObjectiveKind kind, Graph graph, std::size_t k);

    ObjectiveKind kind() const { return kind_; }
    const Graph& graph() const { return graph_; }
    std::size_t k() const { return k_; }

    double evaluate(std::span<const std::size_t> subset) const;

   private:
    ObjectiveKind kind_;
    Graph graph_;
    std::size_t k_;
};

/// Where candidate subsets come from: uniform k-subsets or a pool of samples.
struct ProposalSource {
    enum class Kind { Uniform, Pool };

    Kind kind = Kind::Uniform;
    SamplePool pool;
    /// Index of the first pattern consumed. Unset: derived from the run seed.
    std::optional<std::size_t> start;

    static ProposalSource uniform() { return {}; }
    static ProposalSource from_pool(SamplePool pool, std::optional<std::size_t> start = std::nullopt);
};

struct TracePoint {
    std::size_t step = 0;
    double value = 0.0;

    bool operator==(const TracePoint&) const = default;
};

struct RunTrace {
    /// One point per step (step numbers start at 1); values never decrease.
    std::vector<TracePoint> best_value_at_step;
    std::vector<std::size_t> best_subset;
    std::size_t steps_used = 0;
    std::uint64_t seed = 0;
    /// Pool bookkeeping; meaningless for a uniform source.
    std::size_t pool_start = 0;
    bool pool_wrapped = false;

    double best_value() const { return best_value_at_step.empty() ? 0.0 : best_value_at_step.back().value; }
    /// Best value after `step` steps; a finished early-stopped run keeps its last value.
    double best_at(std::size_t step) const;
    /// First step whose best value exceeds `target`, if any.
    std::optional<std::size_t> first_step_above(double target) const;

    bool operator==(const RunTrace&) const = default;
};

struct RandomSearchOptions {
    /// Stop as soon as the best value exceeds this threshold.
    std::optional<double> stop_above;
};

RunTrace random_search(const Objective& objective, const ProposalSource& source, std::size_t steps,
                       std::uint64_t seed, const RandomSearchOptions& options = {});

struct AnnealingSchedule {
    double initial_temperature = 1.0;
    double cooling = 0.995;

    void validate() const;
};

/// Single-swap annealing with geometric cooling T_t = T0 * alpha^t. With a
/// pool source each step first proposes, with probability `jump_prob`, the
/// next pool pattern in place of the whole subset. The initial subset is
/// drawn from the source and counts as step 1.
RunTrace simulated_annealing(const Objective& objective, const ProposalSource& source, std::size_t steps,
                             const AnnealingSchedule& schedule, double jump_prob, std::uint64_t seed);

/// Repeatedly removes the vertex with the smallest weighted degree among the
/// remaining vertices (lowest index on ties) until k remain. Requires real
/// nonnegative weights and 0 < k < n. Returned in increasing order.
std::vector<std::size_t> greedy_peel(const Graph& graph, std::size_t k);

}  // namespace gbsgraph
