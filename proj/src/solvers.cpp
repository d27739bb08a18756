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

#include "gbsgraph/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "gbsgraph/error.hpp"
#include "gbsgraph/matfn.hpp"
#include "gbsgraph/random.hpp"

namespace gbsgraph {
namespace {

// Stream ids carved out of a run seed.
constexpr std::uint64_t kProposalStream = 0;
constexpr std::uint64_t kPoolStartStream = 1;

std::uint64_t subset_key(std::span<const std::size_t> subset) {
    std::uint64_t key = 0;
    for (const std::size_t v : subset) {
        key |= std::uint64_t{1} << v;
    }
    return key;
}

// Per-run memo of objective values keyed by the vertex bitmask.
class CachedObjective {
   public:
    explicit CachedObjective(const Objective& objective) : objective_(objective) {}

    double operator()(std::span<const std::size_t> subset) {
        const std::uint64_t key = subset_key(subset);
        if (auto it = memo_.find(key); it != memo_.end()) {
            return it->second;
        }
        const double v = objective_.evaluate(subset);
        memo_.emplace(key, v);
        return v;
    }

   private:
    const Objective& objective_;
    std::unordered_map<std::uint64_t, double> memo_;
};

// Hands out k-subsets from the configured source, tracking pool consumption.
class Proposer {
   public:
    Proposer(const Objective& objective, const ProposalSource& source, std::uint64_t seed)
        : source_(source), n_(objective.graph().vertex_count()), k_(objective.k()) {
        if (source.kind != ProposalSource::Kind::Pool) {
            return;
        }
        if (source.pool.empty()) {
            throw ValidationError("proposal pool is empty");
        }
        if (source.pool.modes != n_) {
            throw ValidationError("pool patterns have " + std::to_string(source.pool.modes) +
                                  " modes; the graph has " + std::to_string(n_) + " vertices");
        }
        for (std::size_t i = 0; i < source.pool.size(); ++i) {
            if (source.pool.samples[i].clicks() != k_) {
                throw ValidationError("pool pattern " + std::to_string(i) + " has " +
                                      std::to_string(source.pool.samples[i].clicks()) + " clicks; expected " +
                                      std::to_string(k_));
            }
        }
        if (source.start.has_value()) {
            if (*source.start >= source.pool.size()) {
                throw ValidationError("pool start index out of range");
            }
            start_ = *source.start;
        } else {
            start_ = static_cast<std::size_t>(make_rng(seed, kPoolStartStream)() % source.pool.size());
        }
    }

    bool is_pool() const { return source_.kind == ProposalSource::Kind::Pool; }
    std::size_t pool_start() const { return start_; }
    bool wrapped() const { return is_pool() && consumed_ > source_.pool.size(); }

    std::vector<std::size_t> next(Rng& rng) { return is_pool() ? next_from_pool() : uniform_subset(rng); }

    std::vector<std::size_t> next_from_pool() {
        const std::size_t idx = (start_ + consumed_) % source_.pool.size();
        ++consumed_;
        return source_.pool.samples[idx].clicked_modes();
    }

    std::vector<std::size_t> uniform_subset(Rng& rng) const {
        std::vector<std::size_t> perm(n_);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        for (std::size_t i = 0; i < k_; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, n_ - 1);
            std::swap(perm[i], perm[pick(rng)]);
        }
        perm.resize(k_);
        std::sort(perm.begin(), perm.end());
        return perm;
    }

   private:
    const ProposalSource& source_;
    std::size_t n_;
    std::size_t k_;
    std::size_t start_ = 0;
    std::size_t consumed_ = 0;
};

void require_steps(std::size_t steps) {
    if (steps == 0) {
        throw ValidationError("steps must be at least 1");
    }
}

}  // namespace

std::string_view to_string(ObjectiveKind kind) { return kind == ObjectiveKind::MaxHaf ? "maxhaf" : "density"; }

ObjectiveKind parse_objective_kind(std::string_view text) {
    if (text == "maxhaf" || text == "max-haf") {
        return ObjectiveKind::MaxHaf;
    }
    if (text == "density") {
        return ObjectiveKind::Density;
    }
    throw ValidationError("unknown objective '" + std::string(text) + "' (expected maxhaf or density)");
}

double density(const Graph& graph, std::span<const std::size_t> subset) {
    validate_subset(subset, graph.vertex_count());
    Complex sum{};
    for (const std::size_t i : subset) {
        for (const std::size_t j : subset) {
            sum += graph.weight(i, j);
        }
    }
    return std::abs(sum);
}

Objective::Objective(ObjectiveKind kind, Graph graph, std::size_t k) : kind_(kind), graph_(std::move(graph)), k_(k) {
    const std::size_t n = graph_.vertex_count();
    if (k_ == 0 || k_ >= n) {
        throw ValidationError("k must satisfy 0 < k < n (k=" + std::to_string(k_) + ", n=" + std::to_string(n) + ")");
    }
    if (kind_ == ObjectiveKind::MaxHaf && k_ % 2 != 0) {
        throw ValidationError("the maxhaf objective needs an even k (got " + std::to_string(k_) + ")");
    }
    if (kind_ == ObjectiveKind::MaxHaf && k_ > kMaxHafnianDimension) {
        throw CostGuardError("the maxhaf objective supports k <= " + std::to_string(kMaxHafnianDimension));
    }
}

double Objective::evaluate(std::span<const std::size_t> subset) const {
    if (subset.size() != k_) {
        throw ValidationError("subset size differs from k");
    }
    return kind_ == ObjectiveKind::MaxHaf ? hafnian_sq_mod(graph_, subset) : density(graph_, subset);
}

ProposalSource ProposalSource::from_pool(SamplePool pool, std::optional<std::size_t> start) {
    ProposalSource s;
    s.kind = Kind::Pool;
    s.pool = std::move(pool);
    s.start = start;
    return s;
}

double RunTrace::best_at(std::size_t step) const {
    if (step == 0 || best_value_at_step.empty()) {
        throw ValidationError("best_at: step must be at least 1 on a nonempty trace");
    }
    return best_value_at_step[std::min(step, best_value_at_step.size()) - 1].value;
}

std::optional<std::size_t> RunTrace::first_step_above(double target) const {
    for (const auto& p : best_value_at_step) {
        if (p.value > target) {
            return p.step;
        }
    }
    return std::nullopt;
}

RunTrace random_search(const Objective& objective, const ProposalSource& source, std::size_t steps,
                       std::uint64_t seed, const RandomSearchOptions& options) {
    require_steps(steps);
    Proposer proposer(objective, source, seed);
    CachedObjective eval(objective);
    Rng rng = make_rng(seed, kProposalStream);

    RunTrace trace;
    trace.seed = seed;
    trace.pool_start = proposer.pool_start();
    trace.best_value_at_step.reserve(steps);
    double best = -1.0;
    for (std::size_t step = 1; step <= steps; ++step) {
        auto subset = proposer.next(rng);
        const double v = eval(subset);
        if (v > best) {
            best = v;
            trace.best_subset = std::move(subset);
        }
        trace.best_value_at_step.push_back({step, best});
        trace.steps_used = step;
        if (options.stop_above.has_value() && best > *options.stop_above) {
            break;
        }
    }
    trace.pool_wrapped = proposer.wrapped();
    return trace;
}

void AnnealingSchedule::validate() const {
    if (!(initial_temperature > 0.0) || !std::isfinite(initial_temperature)) {
        throw ValidationError("annealing initial temperature must be positive");
    }
    if (!(cooling > 0.0 && cooling < 1.0)) {
        throw ValidationError("annealing cooling factor must lie in (0, 1)");
    }
}

RunTrace simulated_annealing(const Objective& objective, const ProposalSource& source, std::size_t steps,
                             const AnnealingSchedule& schedule, double jump_prob, std::uint64_t seed) {
    require_steps(steps);
    schedule.validate();
    if (!(jump_prob >= 0.0 && jump_prob < 1.0)) {
        throw ValidationError("jump probability must lie in [0, 1)");
    }
    Proposer proposer(objective, source, seed);
    if (!proposer.is_pool()) {
        jump_prob = 0.0;
    }
    CachedObjective eval(objective);
    Rng rng = make_rng(seed, kProposalStream);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const std::size_t n = objective.graph().vertex_count();
    const std::size_t k = objective.k();

    RunTrace trace;
    trace.seed = seed;
    trace.pool_start = proposer.pool_start();
    trace.best_value_at_step.reserve(steps);

    std::vector<std::size_t> current = proposer.next(rng);
    double v_cur = eval(current);
    double best = v_cur;
    trace.best_subset = current;
    trace.best_value_at_step.push_back({1, best});

    std::vector<char> inside(n, 0);
    double temperature = schedule.initial_temperature;
    for (std::size_t step = 2; step <= steps; ++step) {
        temperature *= schedule.cooling;
        std::vector<std::size_t> proposal;
        if (jump_prob > 0.0 && uniform(rng) < jump_prob) {
            proposal = proposer.next_from_pool();
        } else {
            std::fill(inside.begin(), inside.end(), 0);
            for (const std::size_t v : current) {
                inside[v] = 1;
            }
            std::uniform_int_distribution<std::size_t> pick_in(0, k - 1);
            std::uniform_int_distribution<std::size_t> pick_out(0, n - k - 1);
            const std::size_t out_slot = pick_in(rng);
            std::size_t rank = pick_out(rng);
            std::size_t incoming = 0;
            for (std::size_t v = 0; v < n; ++v) {
                if (inside[v] == 0 && rank-- == 0) {
                    incoming = v;
                    break;
                }
            }
            proposal = current;
            proposal[out_slot] = incoming;
            std::sort(proposal.begin(), proposal.end());
        }
        const double v_prop = eval(proposal);
        if (v_prop >= v_cur || uniform(rng) < std::exp(-(v_cur - v_prop) / temperature)) {
            current = std::move(proposal);
            v_cur = v_prop;
            if (v_cur > best) {
                best = v_cur;
                trace.best_subset = current;
            }
        }
        trace.best_value_at_step.push_back({step, best});
    }
    trace.steps_used = steps;
    trace.pool_wrapped = proposer.wrapped();
    return trace;
}

std::vector<std::size_t> greedy_peel(const Graph& graph, std::size_t k) {
    const std::size_t n = graph.vertex_count();
    if (!graph.has_nonnegative_real_weights()) {
        throw ValidationError("greedy peeling needs real nonnegative weights");
    }
    if (k == 0 || k >= n) {
        throw ValidationError("k must satisfy 0 < k < n");
    }
    std::vector<std::size_t> remaining(n);
    std::iota(remaining.begin(), remaining.end(), std::size_t{0});
    while (remaining.size() > k) {
        std::size_t victim = 0;
        double smallest = INFINITY;
        for (std::size_t idx = 0; idx < remaining.size(); ++idx) {
            double degree = 0.0;
            for (const std::size_t u : remaining) {
                degree += graph.weight(remaining[idx], u).real();
            }
            if (degree < smallest) {
                smallest = degree;
                victim = idx;
            }
        }
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(victim));
    }
    return remaining;
}

}  // namespace gbsgraph
