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

#include "gbsgraph/sampler.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "gbsgraph/error.hpp"
#include "gbsgraph/io.hpp"
#include "gbsgraph/linalg.hpp"
#include "gbsgraph/matfn.hpp"
#include "gbsgraph/parallel.hpp"

namespace gbsgraph {
namespace {

constexpr std::size_t kSamplesPerTask = 256;

std::uint64_t binomial(std::size_t n, std::size_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t c = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
    }
    return c;
}

// Next integer with the same popcount (Gosper's hack).
std::uint64_t next_combination(std::uint64_t x) {
    const std::uint64_t low = x & (~x + 1);
    const std::uint64_t ripple = x + low;
    return ripple | (((x ^ ripple) >> 2) / low);
}

}  // namespace

ChainRuleSampler::ChainRuleSampler(const GaussianState& state) {
    const std::size_t m = state.modes();
    if (m > kMaxSamplerModes) {
        throw CostGuardError("sampler cost guard: " + std::to_string(m) + " modes exceeds the limit of " +
                             std::to_string(kMaxSamplerModes));
    }
    const double mean_clicks = expected_clicks(state);
    if (mean_clicks > kMaxSamplerMeanClicks) {
        std::ostringstream msg;
        msg << "sampler cost guard: expected click count " << mean_clicks << " exceeds the limit of "
            << kMaxSamplerMeanClicks;
        throw CostGuardError(msg.str());
    }
    prefixes_.reserve(m);
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < m; ++k) {
        keep.push_back(k);
        const GaussianState marginal = reduce(state, keep);
        const Complex d = det(marginal.husimi());
        if (!(d.real() > 0.0)) {
            throw NumericalError("marginal covariance determinant is not positive");
        }
        prefixes_.push_back({inverse(marginal.husimi()), std::sqrt(d.real())});
    }
}

double ChainRuleSampler::dark_probability(std::size_t mode, const std::vector<std::size_t>& clicked) const {
    const Prefix& p = prefixes_[mode];
    return threshold_inclusion_exclusion(p.inverse, clicked) / p.sqrt_det;
}

double ChainRuleSampler::prefix_probability(const ClickPattern& prefix) const {
    const std::size_t k = prefix.modes();
    if (k > modes()) {
        throw ValidationError("prefix longer than the sampler's mode count");
    }
    if (k == 0) {
        return 1.0;
    }
    const Prefix& p = prefixes_[k - 1];
    return std::max(0.0, threshold_inclusion_exclusion(p.inverse, prefix.clicked_modes()) / p.sqrt_det);
}

ClickPattern ChainRuleSampler::draw(Rng& rng, std::vector<double>* conditionals) const {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const std::size_t m = modes();
    ClickPattern pattern(m);
    std::vector<std::size_t> clicked;
    double prefix = 1.0;
    if (conditionals != nullptr) {
        conditionals->clear();
    }
    for (std::size_t k = 0; k < m; ++k) {
        const double dark = std::clamp(dark_probability(k, clicked), 0.0, prefix);
        const double q_dark = prefix > 0.0 ? dark / prefix : 1.0;
        if (uniform(rng) < q_dark) {
            prefix = dark;
            if (conditionals != nullptr) {
                conditionals->push_back(q_dark);
            }
        } else {
            prefix -= dark;
            clicked.push_back(k);
            pattern.set(k, true);
            if (conditionals != nullptr) {
                conditionals->push_back(1.0 - q_dark);
            }
            if (clicked.size() > kMaxSamplerPathClicks) {
                throw CostGuardError("sampler cost guard: a sample exceeded " +
                                     std::to_string(kMaxSamplerPathClicks) + " clicks");
            }
        }
    }
    return pattern;
}

SamplePool sample(const GaussianState& state, std::size_t count, std::uint64_t seed) {
    const ChainRuleSampler sampler(state);
    SamplePool pool;
    pool.modes = state.modes();
    pool.seed = seed;
    pool.provenance = "chain-rule";
    pool.samples.assign(count, ClickPattern(state.modes()));
    const std::size_t tasks = (count + kSamplesPerTask - 1) / kSamplesPerTask;
    parallel::for_each_index(tasks, [&](std::size_t task) {
        const std::size_t end = std::min(count, (task + 1) * kSamplesPerTask);
        for (std::size_t i = task * kSamplesPerTask; i < end; ++i) {
            Rng rng = make_rng(seed, i);
            pool.samples[i] = sampler.draw(rng);
        }
    });
    return pool;
}

PostselectedDistribution enumerate_k_clicks(const GaussianState& state, std::size_t k) {
    const std::size_t m = state.modes();
    if (k > m) {
        throw ValidationError("click count exceeds the mode count");
    }
    if (k > kMaxTorontonianModes) {
        throw CostGuardError("enumeration cost guard: " + std::to_string(k) + " clicks exceeds " +
                             std::to_string(kMaxTorontonianModes));
    }
    const std::uint64_t count = binomial(m, k);
    if (count > kMaxEnumeratedPatterns) {
        throw CostGuardError("enumeration cost guard: " + std::to_string(count) + " patterns exceeds " +
                             std::to_string(kMaxEnumeratedPatterns));
    }
    PostselectedDistribution dist;
    dist.patterns.reserve(count);
    std::uint64_t bits = k == 0 ? 0 : (std::uint64_t{1} << k) - 1;
    for (std::uint64_t i = 0; i < count; ++i) {
        dist.patterns.emplace_back(m, bits);
        if (k > 0 && i + 1 < count) {
            bits = next_combination(bits);
        }
    }
    dist.probabilities.assign(count, 0.0);
    const ThresholdDetection detection(state);
    const std::size_t tasks = (count + kSamplesPerTask - 1) / kSamplesPerTask;
    parallel::for_each_index(tasks, [&](std::size_t task) {
        const std::size_t end = std::min<std::size_t>(count, (task + 1) * kSamplesPerTask);
        for (std::size_t i = task * kSamplesPerTask; i < end; ++i) {
            dist.probabilities[i] = detection.probability(dist.patterns[i], k);
        }
    });
    for (const double p : dist.probabilities) {
        dist.total += p;
    }
    return dist;
}

SamplePool sample_postselected(const PostselectedDistribution& dist, std::size_t count, std::uint64_t seed) {
    if (!(dist.total > 0.0) || dist.patterns.empty()) {
        throw ValidationError("the state never produces the requested click count");
    }
    std::vector<double> cdf(dist.probabilities.size());
    std::partial_sum(dist.probabilities.begin(), dist.probabilities.end(), cdf.begin());
    SamplePool pool;
    pool.modes = dist.patterns.front().modes();
    pool.seed = seed;
    pool.provenance = "enumerated-postselected k=" + std::to_string(dist.patterns.front().clicks());
    pool.samples.reserve(count);
    Rng rng = make_rng(seed, 0);
    std::uniform_real_distribution<double> uniform(0.0, cdf.back());
    for (std::size_t i = 0; i < count; ++i) {
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), uniform(rng));
        const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
        pool.samples.push_back(dist.patterns[idx]);
    }
    return pool;
}

SamplePool sample_postselected(const GaussianState& state, std::size_t k, std::size_t count, std::uint64_t seed) {
    return sample_postselected(enumerate_k_clicks(state, k), count, seed);
}

SamplePool postselect(const SamplePool& pool, std::size_t k) {
    if (k > pool.modes) {
        throw ValidationError("postselect: click count exceeds the mode count");
    }
    SamplePool out;
    out.modes = pool.modes;
    out.seed = pool.seed;
    out.provenance = pool.provenance;
    for (const auto& p : pool.samples) {
        if (p.clicks() == k) {
            out.samples.push_back(p);
        }
    }
    return out;
}

SamplePool read_pool(std::istream& in) {
    SamplePool pool;
    bool have_header = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            const std::string body = line.substr(1);
            const auto start = body.find_first_not_of(' ');
            const std::string kv = start == std::string::npos ? "" : body.substr(start);
            if (kv.rfind("provenance=", 0) == 0) {
                pool.provenance = kv.substr(11);
            } else if (kv.rfind("seed=", 0) == 0) {
                const std::string v = kv.substr(5);
                auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), pool.seed);
                if (ec != std::errc{} || ptr != v.data() + v.size()) {
                    throw ValidationError("sample file line " + std::to_string(line_no) + ": malformed seed");
                }
            }
            continue;
        }
        if (!have_header) {
            if (line.rfind("modes=", 0) != 0) {
                throw ValidationError("sample file line " + std::to_string(line_no) + ": expected 'modes=M' header");
            }
            const std::string v = line.substr(6);
            auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), pool.modes);
            if (ec != std::errc{} || ptr != v.data() + v.size() || pool.modes == 0 ||
                pool.modes > ClickPattern::kMaxModes) {
                throw ValidationError("sample file line " + std::to_string(line_no) + ": malformed mode count");
            }
            have_header = true;
            continue;
        }
        if (line.size() != pool.modes) {
            throw ValidationError("sample file line " + std::to_string(line_no) + ": pattern length " +
                                  std::to_string(line.size()) + " does not match modes=" +
                                  std::to_string(pool.modes));
        }
        try {
            pool.samples.push_back(ClickPattern::from_string(line));
        } catch (const ValidationError&) {
            throw ValidationError("sample file line " + std::to_string(line_no) + ": pattern must contain only 0/1");
        }
    }
    if (!have_header) {
        throw ValidationError("sample file has no 'modes=M' header");
    }
    return pool;
}

void write_pool(std::ostream& out, const SamplePool& pool, const std::vector<std::string>& extra_comments) {
    out << "# format_version=" << kFormatVersion << '\n';
    out << "# provenance=" << pool.provenance << '\n';
    out << "# seed=" << pool.seed << '\n';
    for (const auto& c : extra_comments) {
        out << "# " << c << '\n';
    }
    out << "modes=" << pool.modes << '\n';
    for (const auto& p : pool.samples) {
        out << p.to_string() << '\n';
    }
}

SamplePool load_pool(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open sample file " + path.string());
    }
    return read_pool(in);
}

void save_pool(const SamplePool& pool, const std::filesystem::path& path,
               const std::vector<std::string>& extra_comments) {
    std::ostringstream out;
    write_pool(out, pool, extra_comments);
    write_file_atomic(path, out.str());
}

}  // namespace gbsgraph
