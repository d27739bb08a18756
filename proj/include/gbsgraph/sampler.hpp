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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gbsgraph/click_pattern.hpp"
#include "gbsgraph/gaussian.hpp"
#include "gbsgraph/random.hpp"

namespace gbsgraph {

inline constexpr std::size_t kMaxSamplerModes = 24;
inline constexpr double kMaxSamplerMeanClicks = 14.0;
/// Hard stop for a single chain-rule path; beyond it the conditional costs 2^c.
inline constexpr std::size_t kMaxSamplerPathClicks = 22;
/// Largest number of k-click patterns the enumerating sampler will tabulate.
inline constexpr std::size_t kMaxEnumeratedPatterns = 2'000'000;

/// Ordered list of click patterns over a fixed mode count, with where they came from.
struct SamplePool {
    std::size_t modes = 0;
    std::vector<ClickPattern> samples;
    std::string provenance;
    std::uint64_t seed = 0;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
};

/// Exact threshold-detector sampler that draws modes one at a time:
///
///   P(click_k = 0 | prefix) = P(prefix, 0) / P(prefix),
///
/// where P(prefix, 0) comes from the marginal state on modes 0..k. The
/// marginal inverses and determinants depend only on k and are computed once.
class ChainRuleSampler {
   public:
    /// Enforces the cost guards: at most 24 modes and at most 14 expected clicks.
    explicit ChainRuleSampler(const GaussianState& state);

    std::size_t modes() const { return prefixes_.size(); }

    /// One exact sample. If `conditionals` is non-null it receives the
    /// probability of each drawn outcome given the preceding modes.
    ClickPattern draw(Rng& rng, std::vector<double>* conditionals = nullptr) const;

    /// Probability of the given outcomes on modes 0..k-1 (k = prefix.modes() <= modes()).
    double prefix_probability(const ClickPattern& prefix) const;

   private:
    struct Prefix {
        ComplexMatrix inverse;  // sigma_Q^{-1} of the marginal on modes 0..k
        double sqrt_det = 1.0;
    };
    double dark_probability(std::size_t mode, const std::vector<std::size_t>& clicked) const;

    std::vector<Prefix> prefixes_;
};

/// `count` i.i.d. exact samples. Sample i uses the stream derived from
/// (seed, i), so the pool does not depend on the worker count.
SamplePool sample(const GaussianState& state, std::size_t count, std::uint64_t seed);

/// Exact distribution over the k-click patterns (normalized within them).
struct PostselectedDistribution {
    std::vector<ClickPattern> patterns;
    std::vector<double> probabilities;  // unnormalized pattern probabilities
    double total = 0.0;                 // P(exactly k clicks)
};

/// Tabulates every k-click pattern probability. Guarded by kMaxEnumeratedPatterns.
PostselectedDistribution enumerate_k_clicks(const GaussianState& state, std::size_t k);

/// `count` i.i.d. draws from the exact k-click conditional distribution, the
/// same law as sample() followed by postselect(). Throws ValidationError when
/// the state never produces k clicks.
SamplePool sample_postselected(const PostselectedDistribution& dist, std::size_t count, std::uint64_t seed);
SamplePool sample_postselected(const GaussianState& state, std::size_t k, std::size_t count, std::uint64_t seed);

/// Patterns with exactly k clicks, order preserved.
SamplePool postselect(const SamplePool& pool, std::size_t k);

/// Text format: optional '#' comment lines, a "modes=M" header, then one
/// M-character 0/1 pattern per line. "# provenance=" and "# seed=" comments
/// are read back into the pool.
SamplePool read_pool(std::istream& in);
void write_pool(std::ostream& out, const SamplePool& pool, const std::vector<std::string>& extra_comments = {});
SamplePool load_pool(const std::filesystem::path& path);
void save_pool(const SamplePool& pool, const std::filesystem::path& path,
               const std::vector<std::string>& extra_comments = {});

}  // namespace gbsgraph
