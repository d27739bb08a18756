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

#include <cmath>
#include <random>

#include "gbsgraph/bench.hpp"
#include "gbsgraph/encoding.hpp"
#include "gbsgraph/error.hpp"
#include "gbsgraph/instances.hpp"
#include "gbsgraph/parallel.hpp"
#include "oracles.hpp"

using namespace gbsgraph;

namespace {

// A trace that is flat at `value` from step `hit` on and 0 before; hit = 0 never reaches it.
RunTrace step_trace(std::size_t length, std::size_t hit, double value) {
    RunTrace t;
    for (std::size_t s = 1; s <= length; ++s) {
        t.best_value_at_step.push_back({s, hit != 0 && s >= hit ? value : 0.0});
    }
    t.steps_used = length;
    return t;
}

RunTrace constant_trace(std::size_t length, double value) { return step_trace(length, 1, value); }

std::size_t geometric_draw(Rng& rng, double p) { return std::geometric_distribution<std::size_t>(p)(rng) + 1; }

}  // namespace

TEST(Spearman, MatchesRankPairOracle) {
    Rng rng(71);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> coarse(0, 5);
    std::vector<double> x;
    std::vector<double> y;
    for (int i = 0; i < 50; ++i) {
        x.push_back(u(rng));
        // Ties on purpose.
        y.push_back(static_cast<double>(coarse(rng)) + x.back());
    }
    EXPECT_NEAR(spearman(x, y), oracle::rank_pair_spearman(x, y), 1e-12);
    std::vector<double> tied(50);
    for (std::size_t i = 0; i < 50; ++i) {
        tied[i] = static_cast<double>(coarse(rng));
    }
    EXPECT_NEAR(spearman(x, tied), oracle::rank_pair_spearman(x, tied), 1e-12);
    EXPECT_DOUBLE_EQ(spearman(x, x), 1.0);
    EXPECT_NEAR(spearman_z(0.5, 101), 5.0, 1e-12);
}

TEST(Correlation, ZeroRowAndStudy) {
    const CorrelationRow z = correlation_row(ComplexMatrix(4, 4));
    EXPECT_EQ(z.tor, 0.0);
    EXPECT_EQ(z.haf_sq, 0.0);
    EXPECT_EQ(z.density, 0.0);

    const CorrelationStudy s = correlation_study(4, 50, 3);
    ASSERT_EQ(s.rows.size(), 50u);
    std::vector<double> tor;
    std::vector<double> haf;
    for (const auto& r : s.rows) {
        tor.push_back(r.tor);
        haf.push_back(r.haf_sq);
        EXPECT_GE(r.tor, 0.0);
    }
    EXPECT_NEAR(s.rho_tor_haf, oracle::rank_pair_spearman(tor, haf), 1e-12);
    EXPECT_THROW(correlation_study(4, 1, 3), ValidationError);
    const std::string csv = correlation_csv(correlation_study(4, 2, 3));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "tor,haf_sq,density");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST(Correlation, RowTorontonianIsAllClickProbabilityTimesNormalization) {
    Rng rng(72);
    const ComplexMatrix a = random_complex_symmetric(4, rng, 0.9);
    const CorrelationRow r = correlation_row(a);
    EXPECT_NEAR(r.haf_sq, std::norm(oracle::matching_hafnian(a)), 1e-12);
    // Pure state with A = a.
    ComplexMatrix inv_sigma = ComplexMatrix::block(ComplexMatrix::identity(4), a.conjugate() * Complex{-1.0},
                                                   a * Complex{-1.0}, ComplexMatrix::identity(4));
    const ComplexMatrix o = ComplexMatrix::identity(8) - inv_sigma;
    EXPECT_NEAR(r.tor, oracle::direct_torontonian(o), 1e-10 * std::max(1.0, r.tor));
}

TEST(ScoreAdvantage, Examples) {
    const std::vector<RunTrace> e{constant_trace(5, 4.0)};
    const std::vector<RunTrace> c{constant_trace(5, 2.0)};
    EXPECT_DOUBLE_EQ(score_advantage(e, c, 5).value, 2.0);
    EXPECT_DOUBLE_EQ(score_advantage(c, c, 3).value, 1.0);

    const std::vector<RunTrace> e3{constant_trace(4, 1.0), constant_trace(4, 2.5), constant_trace(4, 6.0)};
    const std::vector<RunTrace> c2{constant_trace(4, 0.5), constant_trace(4, 3.0)};
    EXPECT_NEAR(score_advantage(e3, c2, 4).value, (9.5 / 3.0) / (3.5 / 2.0), 1e-12);

    const std::vector<RunTrace> zero{constant_trace(3, 0.0)};
    EXPECT_THROW(score_advantage(e, zero, 1), ValidationError);
    EXPECT_THROW(score_advantage({}, c, 1), ValidationError);
}

TEST(SpeedAdvantage, Examples) {
    const std::vector<RunTrace> e{step_trace(100, 5, 1.0)};
    const std::vector<RunTrace> c{step_trace(100, 50, 1.0)};
    const SpeedAdvantage s = speed_advantage(e, c, 100);
    EXPECT_DOUBLE_EQ(s.value, 10.0);
    EXPECT_EQ(s.censored_trials, 0u);
    EXPECT_DOUBLE_EQ(speed_advantage(c, c, 100).value, 1.0);

    // Enhanced never reaches the target: counted at the budget and flagged.
    const std::vector<RunTrace> never{step_trace(100, 0, 1.0)};
    const SpeedAdvantage censored = speed_advantage(never, c, 100);
    EXPECT_EQ(censored.censored_trials, 1u);
    EXPECT_DOUBLE_EQ(censored.value, 0.5);
}

TEST(SpeedAdvantage, SyntheticGeometricRatio) {
    Rng rng(73);
    const double pc = 0.01;
    const double pe = 0.1;
    const std::size_t budget = 2500;
    std::vector<RunTrace> e;
    std::vector<RunTrace> c;
    for (int t = 0; t < 500; ++t) {
        const std::size_t xc = geometric_draw(rng, pc);
        const std::size_t xe = geometric_draw(rng, pe);
        c.push_back(step_trace(budget, xc <= budget ? xc : 0, 1.0));
        e.push_back(step_trace(budget, xe <= budget ? xe : 0, 1.0));
    }
    const SpeedAdvantage s = speed_advantage(e, c, budget);
    EXPECT_NEAR(s.value, 10.0, 2.0);
    EXPECT_GT(s.standard_error, 0.0);
}

TEST(Advantage, SourceAgainstItselfIsOne) {
    const PlantedInstance inst = planted_clique(12, 5, 0.3, 2);
    const Objective obj(ObjectiveKind::Density, inst.graph, 4);
    std::vector<RunTrace> a;
    std::vector<RunTrace> b;
    for (std::uint64_t t = 0; t < 300; ++t) {
        a.push_back(random_search(obj, ProposalSource::uniform(), 30, 2 * t));
        b.push_back(random_search(obj, ProposalSource::uniform(), 30, 2 * t + 1));
    }
    const Estimate score = score_advantage(a, b, 30);
    EXPECT_NEAR(score.value, 1.0, 3.0 * score.standard_error);
    // Each pair's target is the classical run's own best, which an independent
    // copy of the same source may miss, so the speed check uses identical runs.
    const SpeedAdvantage speed = speed_advantage(a, a, 30);
    EXPECT_DOUBLE_EQ(speed.value, 1.0);
    EXPECT_EQ(speed.censored_trials, 0u);
    EXPECT_LE(speed_advantage(a, b, 30).value, 1.0);
}

TEST(GeometricFit, Examples) {
    const std::vector<std::size_t> ones{1, 1, 1};
    const GeometricFit f1 = geometric_fit(ones);
    EXPECT_DOUBLE_EQ(f1.p_hat, 1.0);
    EXPECT_EQ(f1.n_trials, 3u);
    EXPECT_LE(f1.ci95_low, f1.p_hat);
    const std::vector<std::size_t> twos{2, 2, 2};
    const GeometricFit f2 = geometric_fit(twos);
    EXPECT_DOUBLE_EQ(f2.p_hat, 0.5);
    EXPECT_LT(f2.ci95_low, 0.5);
    EXPECT_GT(f2.ci95_high, 0.5);
    EXPECT_THROW(geometric_fit(std::vector<std::size_t>{}), ValidationError);
    EXPECT_THROW(geometric_fit(std::vector<std::size_t>{1, 0}), ValidationError);
}

TEST(GeometricFit, CoverageAtReferenceRate) {
    // 95% interval at p = 0.0196: coverage within 95 +- 5 points over 200 replications.
    Rng rng(74);
    int covered = 0;
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<std::size_t> steps(10000);
        for (auto& s : steps) {
            s = geometric_draw(rng, 0.0196);
        }
        const GeometricFit f = geometric_fit(steps);
        covered += f.ci95_low <= 0.0196 && 0.0196 <= f.ci95_high ? 1 : 0;
    }
    EXPECT_GE(covered, 180);
    EXPECT_LE(covered, 200);
}

TEST(GeometricFit, OneSidedComparison) {
    Rng rng(75);
    std::vector<std::size_t> fast(400);
    std::vector<std::size_t> slow(400);
    for (std::size_t i = 0; i < 400; ++i) {
        fast[i] = geometric_draw(rng, 0.05);
        slow[i] = geometric_draw(rng, 0.02);
    }
    EXPECT_GT(geometric_z(geometric_fit(fast), geometric_fit(slow)), kOneSided95);
    EXPECT_LT(geometric_z(geometric_fit(slow), geometric_fit(fast)), 0.0);
}

TEST(AdvantageStudy, ReportsPerKAndIsDeterministic) {
    const PlantedInstance inst = planted_clique(10, 4, 0.2, 6);
    AdvantageConfig cfg;
    cfg.k_values = {2, 4};
    cfg.steps = 40;
    cfg.trials = 20;
    cfg.seed = 9;
    cfg.pool_size = 300;
    const AdvantageStudy a = advantage_study(inst.graph, cfg);
    ASSERT_EQ(a.reports.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_EQ(a.reports[i].photon_click_k, cfg.k_values[i]);
        EXPECT_EQ(a.reports[i].trials, 20u);
        EXPECT_GT(a.reports[i].score_advantage, 0.0);
        EXPECT_GT(a.reports[i].speed_advantage, 0.0);
        EXPECT_EQ(a.enhanced[i].size(), 20u);
    }
    parallel::set_max_workers(1);
    const AdvantageStudy b = advantage_study(inst.graph, cfg);
    parallel::set_max_workers(0);
    EXPECT_EQ(advantage_csv(a.reports), advantage_csv(b.reports));
    EXPECT_EQ(advantage_json(a.reports), advantage_json(b.reports));
    const std::string csv = advantage_csv(a.reports);
    EXPECT_EQ(csv.substr(0, csv.find(',')), "photon_click_k");
}

TEST(AdvantageStudy, ChainRulePoolIsPostselected) {
    const Graph g = random_complex_graph(8, 4);
    const GaussianState s = state_from_device(encode_graph(g, choose_scale(g, 2.0)).device());
    const SamplePool pool = device_pool(s, 2, PoolMethod::ChainRule, 500, 3);
    EXPECT_FALSE(pool.empty());
    for (const auto& p : pool.samples) {
        EXPECT_EQ(p.clicks(), 2u);
    }
    EXPECT_EQ(device_pool(s, 2, PoolMethod::Enumerate, 100, 3).size(), 100u);
}

TEST(NoiseSweep, FullLossFlagsNoSuccess) {
    const Graph g = random_complex_graph(8, 5);
    NoiseSweepConfig cfg;
    cfg.k = 2;
    cfg.eta_grid = {0.0, 1.0};
    cfg.epsilon_grid = {0.0};
    cfg.trials = 30;
    cfg.classical_trials = 30;
    cfg.classical_budget = 5;
    cfg.max_steps = 200;
    cfg.seed = 4;
    const NoiseSweep sweep = noise_sweep(g, cfg);
    ASSERT_EQ(sweep.rows.size(), 2u);
    EXPECT_TRUE(sweep.rows[0].no_success);
    EXPECT_FALSE(sweep.rows[1].no_success);
    EXPECT_GT(sweep.rows[1].p_hat, 0.0);
    EXPECT_LE(sweep.rows[1].ci95_low, sweep.rows[1].p_hat);
    EXPECT_GE(sweep.rows[1].ci95_high, sweep.rows[1].p_hat);
    EXPECT_EQ(noise_sweep_csv(sweep), noise_sweep_csv(noise_sweep(g, cfg)));
    const std::string csv = noise_sweep_csv(sweep);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "eta,epsilon,p_hat,n_trials,ci95_low,ci95_high,censored_trials,no_success");

    cfg.eta_grid = {1.5};
    EXPECT_THROW(noise_sweep(g, cfg), ValidationError);
    cfg.eta_grid = {1.0};
    cfg.k = 12;
    EXPECT_THROW(noise_sweep(random_complex_graph(26, 1), cfg), CostGuardError);
}
