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
#include <sstream>

#include "gbsgraph/bench.hpp"
#include "gbsgraph/error.hpp"
#include "gbsgraph/matfn.hpp"
#include "gbsgraph/parallel.hpp"
#include "gbsgraph/sampler.hpp"
#include "oracles.hpp"

using namespace gbsgraph;

namespace {

std::string to_text(const SamplePool& pool) {
    std::ostringstream out;
    write_pool(out, pool);
    return out.str();
}

SamplePool from_text(const std::string& text) {
    std::istringstream in(text);
    return read_pool(in);
}

}  // namespace

TEST(Sample, VacuumGivesDarkPatterns) {
    const SamplePool pool = sample(GaussianState::vacuum(5), 200, 1);
    ASSERT_EQ(pool.size(), 200u);
    for (const auto& p : pool.samples) {
        EXPECT_EQ(p.clicks(), 0u);
        EXPECT_EQ(p.modes(), 5u);
    }
}

TEST(Sample, SingleModeClickFrequency) {
    const std::vector<double> r{1.0};
    const GaussianState s = state_from_device(r, ComplexMatrix::identity(1));
    const std::size_t n = 100000;
    const SamplePool pool = sample(s, n, 7);
    std::size_t clicks = 0;
    for (const auto& p : pool.samples) {
        clicks += p.clicks();
    }
    const double p = 1.0 - 1.0 / std::cosh(1.0);
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    EXPECT_NEAR(static_cast<double>(clicks) / static_cast<double>(n), p, 3.0 * sigma);
}

TEST(Sample, FourModeTotalVariation) {
    Rng rng(51);
    const GaussianState s = noisy_device_state(oracle::random_device(4, rng, 1.0), {0.9, 0.1});
    const std::size_t n = 100000;
    const SamplePool pool = sample(s, n, 8);
    std::vector<double> freq(16, 0.0);
    for (const auto& p : pool.samples) {
        freq[p.bits()] += 1.0 / static_cast<double>(n);
    }
    double tvd = 0.0;
    for (std::uint64_t b = 0; b < 16; ++b) {
        tvd += 0.5 * std::abs(freq[b] - oracle::pattern_probability(s, ClickPattern(4, b)));
    }
    EXPECT_LT(tvd, 0.02);
}

TEST(ChainRuleSampler, ConditionalsMultiplyToPatternProbability) {
    Rng rng(52);
    for (std::size_t m = 1; m <= 5; ++m) {
        const GaussianState s = noisy_device_state(oracle::random_device(m, rng, 1.2), {0.8, 0.2});
        const ChainRuleSampler sampler(s);
        Rng draw_rng(100 + m);
        for (int t = 0; t < 50; ++t) {
            std::vector<double> cond;
            const ClickPattern p = sampler.draw(draw_rng, &cond);
            ASSERT_EQ(cond.size(), m);
            double product = 1.0;
            for (const double c : cond) {
                product *= c;
            }
            EXPECT_NEAR(product, pattern_probability(s, p), 1e-8);
        }
    }
}

TEST(ChainRuleSampler, PrefixProbabilitiesMarginalize) {
    Rng rng(53);
    const GaussianState s = state_from_device(oracle::random_device(4, rng));
    const ChainRuleSampler sampler(s);
    EXPECT_DOUBLE_EQ(sampler.prefix_probability(ClickPattern(0)), 1.0);
    // Sum of the full-pattern probabilities sharing a 2-mode prefix.
    for (std::uint64_t prefix = 0; prefix < 4; ++prefix) {
        double total = 0.0;
        for (std::uint64_t rest = 0; rest < 4; ++rest) {
            total += pattern_probability(s, ClickPattern(4, prefix | (rest << 2)));
        }
        EXPECT_NEAR(sampler.prefix_probability(ClickPattern(2, prefix)), total, 1e-10);
    }
}

TEST(Sample, SeedDeterminismAndWorkerIndependence) {
    Rng rng(54);
    const GaussianState s = state_from_device(oracle::random_device(6, rng));
    parallel::set_max_workers(1);
    const SamplePool a = sample(s, 600, 99);
    parallel::set_max_workers(3);
    const SamplePool b = sample(s, 600, 99);
    parallel::set_max_workers(0);
    EXPECT_EQ(a.samples, b.samples);
    EXPECT_NE(sample(s, 600, 100).samples, a.samples);
}

TEST(Sample, CostGuards) {
    EXPECT_THROW(sample(GaussianState::vacuum(25), 1, 0), CostGuardError);
    // 16 modes with large squeezing: expected clicks above 14.
    const std::vector<double> r(16, 3.0);
    const GaussianState loud = state_from_device(r, ComplexMatrix::identity(16));
    EXPECT_GT(expected_clicks(loud), kMaxSamplerMeanClicks);
    EXPECT_THROW(sample(loud, 1, 0), CostGuardError);
}

TEST(EnumerateKClicks, MatchesPatternProbabilities) {
    Rng rng(55);
    const GaussianState s = noisy_device_state(oracle::random_device(6, rng), {0.7, 0.1});
    const PostselectedDistribution d = enumerate_k_clicks(s, 3);
    EXPECT_EQ(d.patterns.size(), 20u);
    double total = 0.0;
    for (std::size_t i = 0; i < d.patterns.size(); ++i) {
        EXPECT_EQ(d.patterns[i].clicks(), 3u);
        EXPECT_NEAR(d.probabilities[i], oracle::pattern_probability(s, d.patterns[i]), 1e-10);
        total += d.probabilities[i];
    }
    EXPECT_NEAR(d.total, total, 1e-14);
    EXPECT_THROW(enumerate_k_clicks(s, 7), ValidationError);
}

TEST(SamplePostselected, FollowsConditionalLaw) {
    Rng rng(56);
    const GaussianState s = state_from_device(oracle::random_device(5, rng, 1.2));
    const PostselectedDistribution d = enumerate_k_clicks(s, 2);
    const std::size_t n = 50000;
    const SamplePool pool = sample_postselected(d, n, 3);
    ASSERT_EQ(pool.size(), n);
    double tvd = 0.0;
    for (std::size_t i = 0; i < d.patterns.size(); ++i) {
        double f = 0.0;
        for (const auto& p : pool.samples) {
            f += p == d.patterns[i] ? 1.0 : 0.0;
        }
        tvd += 0.5 * std::abs(f / static_cast<double>(n) - d.probabilities[i] / d.total);
    }
    EXPECT_LT(tvd, 0.02);
    EXPECT_THROW(sample_postselected(GaussianState::vacuum(4), 2, 10, 0), ValidationError);
}

TEST(Postselect, FiltersAndPreservesOrder) {
    const SamplePool vac = sample(GaussianState::vacuum(3), 10, 0);
    EXPECT_EQ(postselect(vac, 0).samples, vac.samples);
    EXPECT_THROW(postselect(vac, 4), ValidationError);

    Rng rng(57);
    const SamplePool pool = sample(state_from_device(oracle::random_device(5, rng, 1.5)), 2000, 4);
    for (std::size_t k = 0; k <= 5; ++k) {
        std::vector<ClickPattern> expected;
        for (const auto& p : pool.samples) {
            if (p.clicks() == k) {
                expected.push_back(p);
            }
        }
        const SamplePool got = postselect(pool, k);
        EXPECT_EQ(got.samples, expected);
        if (k == 5) {
            for (const auto& p : got.samples) {
                EXPECT_EQ(p.to_string(), "11111");
            }
        }
    }
}

TEST(PoolFile, HeaderOnlyAndSingleLine) {
    const SamplePool empty = from_text("modes=4\n");
    EXPECT_EQ(empty.modes, 4u);
    EXPECT_TRUE(empty.empty());
    const SamplePool one = from_text("# a comment\nmodes=4\n0101\n");
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one.samples[0].clicks(), 2u);
    EXPECT_TRUE(one.samples[0].clicked(1));
    EXPECT_TRUE(one.samples[0].clicked(3));
}

TEST(PoolFile, RoundtripIsByteIdentical) {
    Rng rng(58);
    SamplePool pool = sample(state_from_device(oracle::random_device(8, rng)), 1000, 5);
    const std::string text = to_text(pool);
    const SamplePool back = from_text(text);
    EXPECT_EQ(back.samples, pool.samples);
    EXPECT_EQ(back.seed, pool.seed);
    EXPECT_EQ(back.provenance, pool.provenance);
    EXPECT_EQ(to_text(back), text);

    const auto path = std::filesystem::temp_directory_path() / "gbsgraph_pool_roundtrip.txt";
    save_pool(pool, path);
    EXPECT_EQ(load_pool(path).samples, pool.samples);
    std::filesystem::remove(path);
}

TEST(PoolFile, MalformedInputReportsLine) {
    auto message = [](const std::string& text) {
        try {
            from_text(text);
        } catch (const ValidationError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(message("modes=4\n0101\n011\n").find("line 3"), std::string::npos);
    EXPECT_NE(message("modes=4\n01a1\n").find("line 2"), std::string::npos);
    EXPECT_NE(message("0101\n").find("line 1"), std::string::npos);
    EXPECT_NE(message("modes=x\n").find("line 1"), std::string::npos);
    EXPECT_NE(message("").find("header"), std::string::npos);
}

TEST(ProportionalSampling, ProbabilityTracksHafnianAcrossDevices) {
    // Random 4-mode pure devices: P(all four click) against |Haf(A)|^2.
    Rng rng(59);
    std::vector<double> prob;
    std::vector<double> haf;
    for (int t = 0; t < 300; ++t) {
        const Device d = oracle::random_device(4, rng, 1.0);
        const GaussianState s = state_from_device(d);
        prob.push_back(pattern_probability(s, ClickPattern::from_string("1111")));
        haf.push_back(std::norm(hafnian(sampling_matrix(s).a)));
    }
    EXPECT_GT(spearman(prob, haf), 0.0);
}
