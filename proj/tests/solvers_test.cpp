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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "gbsgraph/bench.hpp"
#include "gbsgraph/error.hpp"
#include "gbsgraph/instances.hpp"
#include "gbsgraph/matfn.hpp"
#include "gbsgraph/solvers.hpp"
#include "oracles.hpp"

using namespace gbsgraph;

namespace {

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> s;
    std::function<void(std::size_t)> rec = [&](std::size_t next) {
        if (s.size() == k) {
            fn(s);
            return;
        }
        for (std::size_t v = next; v < n; ++v) {
            s.push_back(v);
            rec(v + 1);
            s.pop_back();
        }
    };
    rec(0);
}

double direct_density(const ComplexMatrix& m, const std::vector<std::size_t>& s) {
    Complex total{};
    for (const std::size_t i : s) {
        for (const std::size_t j : s) {
            total += m(i, j);
        }
    }
    return std::abs(total);
}

double exhaustive_max_haf(const Graph& g, std::size_t k) {
    double best = 0.0;
    for_each_subset(g.vertex_count(), k, [&](const std::vector<std::size_t>& s) {
        best = std::max(best, std::norm(oracle::matching_hafnian(g.induced(s))));
    });
    return best;
}

Graph complete_graph(std::size_t n) { return zero_one_graph(n, 1.0, 0); }

Graph star_graph(std::size_t leaves) {
    ComplexMatrix m(leaves + 1, leaves + 1);
    for (std::size_t i = 1; i <= leaves; ++i) {
        m(0, i) = m(i, 0) = 1.0;
    }
    return Graph(m);
}

SamplePool pool_of(std::size_t modes, const std::vector<std::vector<std::size_t>>& subsets) {
    SamplePool pool;
    pool.modes = modes;
    for (const auto& s : subsets) {
        pool.samples.push_back(ClickPattern::from_modes(modes, s));
    }
    return pool;
}

void expect_monotone(const RunTrace& t, std::size_t k) {
    for (std::size_t i = 0; i < t.best_value_at_step.size(); ++i) {
        EXPECT_EQ(t.best_value_at_step[i].step, i + 1);
        if (i > 0) {
            EXPECT_GE(t.best_value_at_step[i].value, t.best_value_at_step[i - 1].value);
        }
    }
    EXPECT_EQ(t.best_subset.size(), k);
}

}  // namespace

TEST(Density, Examples) {
    const Graph k5 = complete_graph(5);
    const std::vector<std::size_t> all{0, 1, 2, 3, 4};
    EXPECT_DOUBLE_EQ(density(k5, all), 20.0);
    EXPECT_DOUBLE_EQ(density(Graph(ComplexMatrix(4, 4)), std::vector<std::size_t>{0, 1, 2}), 0.0);

    Rng rng(61);
    const ComplexMatrix m = random_complex_symmetric(9, rng, 0.9);
    const std::vector<std::size_t> five{0, 2, 3, 6, 8};
    EXPECT_NEAR(density(Graph(m), five), direct_density(m, five), 1e-14);
}

TEST(Objective, Validation) {
    const Graph g = complete_graph(6);
    EXPECT_THROW(Objective(ObjectiveKind::MaxHaf, g, 3), ValidationError);
    EXPECT_THROW(Objective(ObjectiveKind::Density, g, 0), ValidationError);
    EXPECT_THROW(Objective(ObjectiveKind::Density, g, 6), ValidationError);
    const Objective obj(ObjectiveKind::MaxHaf, g, 4);
    EXPECT_DOUBLE_EQ(obj.evaluate(std::vector<std::size_t>{0, 1, 2, 3}), 9.0);
    EXPECT_THROW(obj.evaluate(std::vector<std::size_t>{0, 1}), ValidationError);
    EXPECT_EQ(parse_objective_kind("maxhaf"), ObjectiveKind::MaxHaf);
    EXPECT_EQ(parse_objective_kind("density"), ObjectiveKind::Density);
    EXPECT_THROW(parse_objective_kind("haf"), ValidationError);
}

TEST(RandomSearch, SingleStepRecordsThatDraw) {
    const Objective obj(ObjectiveKind::Density, random_complex_graph(10, 3), 4);
    const RunTrace t = random_search(obj, ProposalSource::uniform(), 1, 17);
    ASSERT_EQ(t.best_value_at_step.size(), 1u);
    EXPECT_EQ(t.steps_used, 1u);
    EXPECT_EQ(t.seed, 17u);
    EXPECT_DOUBLE_EQ(t.best_value(), obj.evaluate(t.best_subset));
}

TEST(RandomSearch, PoolOfOptimumHitsAtFirstStep) {
    const PlantedInstance inst = planted_clique(16, 6, 0.1, 4);
    const Objective obj(ObjectiveKind::Density, inst.graph, 6);
    const SamplePool pool = pool_of(16, {inst.clique});
    const RunTrace t = random_search(obj, ProposalSource::from_pool(pool), 20, 5);
    EXPECT_DOUBLE_EQ(t.best_at(1), 30.0);
    EXPECT_EQ(t.first_step_above(29.5), std::optional<std::size_t>(1));
    EXPECT_TRUE(t.pool_wrapped);
    EXPECT_EQ(t.best_subset, inst.clique);
}

TEST(RandomSearch, PoolConsumedSequentially) {
    const Objective obj(ObjectiveKind::Density, complete_graph(5), 2);
    ComplexMatrix m(5, 5);
    m(3, 4) = m(4, 3) = 1.0;
    const Objective sparse(ObjectiveKind::Density, Graph(m), 2);
    // Only the third pattern is an edge: the best value appears exactly at step 3.
    const SamplePool pool = pool_of(5, {{0, 1}, {1, 2}, {3, 4}, {0, 4}});
    const RunTrace t = random_search(sparse, ProposalSource::from_pool(pool, 0), 4, 1);
    EXPECT_EQ(t.first_step_above(0.0), std::optional<std::size_t>(3));
    EXPECT_FALSE(t.pool_wrapped);
    const RunTrace shifted = random_search(sparse, ProposalSource::from_pool(pool, 2), 4, 1);
    EXPECT_EQ(shifted.first_step_above(0.0), std::optional<std::size_t>(1));
    EXPECT_TRUE(random_search(obj, ProposalSource::from_pool(pool, 1), 5, 1).pool_wrapped);
}

TEST(RandomSearch, FindsExhaustiveOptimum) {
    const Graph g = random_complex_graph(12, 8);
    const double optimum = exhaustive_max_haf(g, 4);
    const Objective obj(ObjectiveKind::MaxHaf, g, 4);
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const RunTrace t = random_search(obj, ProposalSource::uniform(), 10000, seed);
        expect_monotone(t, 4);
        hits += std::abs(t.best_value() - optimum) <= 1e-9 * optimum ? 1 : 0;
    }
    EXPECT_GE(hits, 99);
}

TEST(RandomSearch, StopAboveEndsEarly) {
    const PlantedInstance inst = planted_clique(12, 6, 0.1, 9);
    const Objective obj(ObjectiveKind::Density, inst.graph, 6);
    const RunTrace t = random_search(obj, ProposalSource::from_pool(pool_of(12, {inst.clique})), 50, 2, {29.0});
    EXPECT_EQ(t.steps_used, 1u);
    EXPECT_DOUBLE_EQ(t.best_at(50), 30.0);
}

TEST(RandomSearch, Errors) {
    const Objective obj(ObjectiveKind::Density, complete_graph(5), 2);
    EXPECT_THROW(random_search(obj, ProposalSource::uniform(), 0, 1), ValidationError);
    EXPECT_THROW(random_search(obj, ProposalSource::from_pool(pool_of(5, {})), 3, 1), ValidationError);
    EXPECT_THROW(random_search(obj, ProposalSource::from_pool(pool_of(5, {{0, 1, 2}})), 3, 1), ValidationError);
    EXPECT_THROW(random_search(obj, ProposalSource::from_pool(pool_of(6, {{0, 1}})), 3, 1), ValidationError);
    EXPECT_THROW(random_search(obj, ProposalSource::from_pool(pool_of(5, {{0, 1}}), 1), 3, 1), ValidationError);
}

TEST(SimulatedAnnealing, ColdLimitClimbsLineGraph) {
    // Path 0-1-2-3-4 with one heavy edge; the 2-subset {2, 3} is the unique optimum.
    ComplexMatrix m(5, 5);
    const double w[4] = {1.0, 2.0, 5.0, 1.0};
    for (std::size_t i = 0; i < 4; ++i) {
        m(i, i + 1) = m(i + 1, i) = w[i];
    }
    const Objective obj(ObjectiveKind::Density, Graph(m), 2);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const RunTrace t = simulated_annealing(obj, ProposalSource::uniform(), 300, {1e-9, 0.99}, 0.0, seed);
        EXPECT_DOUBLE_EQ(t.best_value(), 10.0);
        EXPECT_EQ(t.best_subset, (std::vector<std::size_t>{2, 3}));
    }
}

TEST(SimulatedAnnealing, PoolInitialization) {
    const PlantedInstance inst = planted_clique(12, 6, 0.2, 10);
    const Objective obj(ObjectiveKind::Density, inst.graph, 6);
    const SamplePool pool = pool_of(12, {inst.clique});
    const RunTrace t = simulated_annealing(obj, ProposalSource::from_pool(pool, 0), 10, {}, 0.0, 3);
    EXPECT_DOUBLE_EQ(t.best_at(1), 30.0);
    // Uniform source ignores the jump probability.
    const RunTrace a = simulated_annealing(obj, ProposalSource::uniform(), 200, {}, 0.5, 3);
    const RunTrace b = simulated_annealing(obj, ProposalSource::uniform(), 200, {}, 0.0, 3);
    EXPECT_EQ(a.best_value_at_step, b.best_value_at_step);
}

TEST(SimulatedAnnealing, FindsPlantedClique) {
    const PlantedInstance inst = planted_clique(12, 6, 0.2, 11);
    const Objective obj(ObjectiveKind::Density, inst.graph, 6);
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const RunTrace t = simulated_annealing(obj, ProposalSource::uniform(), 5000, {1.0, 0.995}, 0.0, seed);
        expect_monotone(t, 6);
        hits += t.best_value() == 30.0 ? 1 : 0;
    }
    EXPECT_GE(hits, 90);
}

TEST(SimulatedAnnealing, Errors) {
    const Objective obj(ObjectiveKind::Density, complete_graph(5), 2);
    const ProposalSource src = ProposalSource::uniform();
    EXPECT_THROW(simulated_annealing(obj, src, 10, {0.0, 0.9}, 0.0, 1), ValidationError);
    EXPECT_THROW(simulated_annealing(obj, src, 10, {1.0, 1.0}, 0.0, 1), ValidationError);
    EXPECT_THROW(simulated_annealing(obj, src, 10, {1.0, 0.0}, 0.0, 1), ValidationError);
    EXPECT_THROW(simulated_annealing(obj, src, 10, {1.0, 0.9}, 1.0, 1), ValidationError);
    EXPECT_THROW(simulated_annealing(obj, src, 0, {1.0, 0.9}, 0.0, 1), ValidationError);
}

TEST(Solvers, SeedDeterminism) {
    const Graph g = random_complex_graph(12, 12);
    const Objective obj(ObjectiveKind::MaxHaf, g, 6);
    const SamplePool pool = pool_of(12, {{0, 1, 2, 3, 4, 5}, {6, 7, 8, 9, 10, 11}, {0, 2, 4, 6, 8, 10}});
    const ProposalSource src = ProposalSource::from_pool(pool);
    EXPECT_EQ(random_search(obj, src, 100, 7), random_search(obj, src, 100, 7));
    EXPECT_EQ(simulated_annealing(obj, src, 300, {}, 0.2, 7), simulated_annealing(obj, src, 300, {}, 0.2, 7));
    EXPECT_NE(simulated_annealing(obj, ProposalSource::uniform(), 300, {}, 0.0, 7).best_value_at_step,
              simulated_annealing(obj, ProposalSource::uniform(), 300, {}, 0.0, 8).best_value_at_step);
}

TEST(GreedyPeel, CompleteGraphKeepsHighestIndices) {
    for (std::size_t k = 1; k < 7; ++k) {
        const std::vector<std::size_t> s = greedy_peel(complete_graph(7), k);
        std::vector<std::size_t> expected;
        for (std::size_t v = 7 - k; v < 7; ++v) {
            expected.push_back(v);
        }
        EXPECT_EQ(s, expected);
        EXPECT_DOUBLE_EQ(density(complete_graph(7), s), static_cast<double>(k * (k - 1)));
    }
}

TEST(GreedyPeel, StarKeepsCenter) {
    // Leaves all have degree 1; ties go to the lowest index, so leaves 1..4 go first.
    const std::vector<std::size_t> s = greedy_peel(star_graph(5), 2);
    EXPECT_EQ(s, (std::vector<std::size_t>{0, 5}));
    EXPECT_DOUBLE_EQ(density(star_graph(5), s), 2.0);
}

TEST(GreedyPeel, RecoversPlantedClique) {
    // K6 on {2, 4, 6, 8, 10, 11} plus a sparse path through the other vertices.
    const std::vector<std::size_t> clique{2, 4, 6, 8, 10, 11};
    ComplexMatrix m(14, 14);
    for (const std::size_t i : clique) {
        for (const std::size_t j : clique) {
            if (i != j) {
                m(i, j) = 1.0;
            }
        }
    }
    const std::vector<std::pair<std::size_t, std::size_t>> noise{{0, 1}, {1, 3}, {3, 5}, {5, 7}, {7, 9},
                                                                  {9, 12}, {12, 13}, {0, 2}, {13, 11}};
    for (const auto& [i, j] : noise) {
        m(i, j) = m(j, i) = 1.0;
    }
    EXPECT_EQ(greedy_peel(Graph(m), 6), clique);
}

TEST(GreedyPeel, Errors) {
    EXPECT_THROW(greedy_peel(random_complex_graph(6, 1), 3), ValidationError);
    ComplexMatrix neg(3, 3);
    neg(0, 1) = neg(1, 0) = -1.0;
    EXPECT_THROW(greedy_peel(Graph(neg), 1), ValidationError);
    EXPECT_THROW(greedy_peel(complete_graph(4), 4), ValidationError);
    EXPECT_THROW(greedy_peel(complete_graph(4), 0), ValidationError);
}

TEST(Objectives, HafnianAndDensityPositivelyAssociated) {
    // All 6-subsets of 0/1 graphs: |Haf|^2 and density rank-correlate, and
    // the Max-Haf subsets are at least median-dense.
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Graph g = zero_one_graph(12, 0.5, seed);
        std::vector<double> haf;
        std::vector<double> dens;
        for_each_subset(12, 6, [&](const std::vector<std::size_t>& s) {
            haf.push_back(hafnian_sq_mod(g, s));
            dens.push_back(density(g, s));
        });
        EXPECT_GT(spearman(haf, dens), 0.0);
        std::vector<double> sorted = dens;
        std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
        const double median = sorted[sorted.size() / 2];
        const double top = *std::max_element(haf.begin(), haf.end());
        for (std::size_t i = 0; i < haf.size(); ++i) {
            if (haf[i] == top) {
                EXPECT_GE(dens[i], median);
            }
        }
    }
}
