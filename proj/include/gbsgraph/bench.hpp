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
#include <vector>

#include "gbsgraph/gaussian.hpp"
#include "gbsgraph/graph.hpp"
#include "gbsgraph/sampler.hpp"
#include "gbsgraph/solvers.hpp"

namespace gbsgraph {

/// One-sided 95% normal quantile.
inline constexpr double kOneSided95 = 1.6448536269514722;

/// Spearman rank correlation with average ranks for ties. Needs n >= 2 and
/// nonconstant inputs (otherwise 0).
double spearman(std::span<const double> x, std::span<const double> y);
/// Large-sample z statistic of a rank correlation, rho * sqrt(n - 1).
double spearman_z(double rho, std::size_t n);

struct CorrelationRow {
    double tor = 0.0;
    double haf_sq = 0.0;
    double density = 0.0;
};

struct CorrelationStudy {
    std::vector<CorrelationRow> rows;
    double rho_tor_haf = 0.0;
    double rho_tor_density = 0.0;
};

/// Torontonian of the all-click pattern, |Haf(a)|^2 and density of a pure
/// state whose sampling matrix has A block `a` (spectral norm below 1).
CorrelationRow correlation_row(const ComplexMatrix& a);

/// Random complex symmetric matrices rescaled to spectral norm 0.9.
CorrelationStudy correlation_study(std::size_t mode_count, std::size_t n_matrices, std::uint64_t seed);

struct Estimate {
    double value = 0.0;
    double standard_error = 0.0;
};

/// mean(enhanced best at step) / mean(classical best at step), error by propagation.
Estimate score_advantage(std::span<const RunTrace> enhanced, std::span<const RunTrace> classical,
                         std::size_t at_step);

struct SpeedAdvantage {
    double value = 0.0;
    double standard_error = 0.0;
    /// Enhanced trials that never reached their target; counted at the budget.
    std::size_t censored_trials = 0;
};

/// Trials are paired by index. The target of pair i is classical[i]'s best at
/// `budget`; the ratio is mean classical steps to reach it over mean enhanced steps.
SpeedAdvantage speed_advantage(std::span<const RunTrace> enhanced, std::span<const RunTrace> classical,
                               std::size_t budget);

struct GeometricFit {
    double p_hat = 0.0;
    std::size_t n_trials = 0;
    double ci95_low = 0.0;
    double ci95_high = 0.0;
};

/// MLE p = 1 / mean(steps) with a normal-approximation 95% interval
/// p +- 1.96 p sqrt((1 - p) / n), clipped to [0, 1].
GeometricFit geometric_fit(std::span<const std::size_t> steps);

/// One-sided z statistic for p(a) > p(b) from two fits.
double geometric_z(const GeometricFit& a, const GeometricFit& b);

struct AdvantageReport {
    std::size_t photon_click_k = 0;
    double score_advantage = 0.0;
    double speed_advantage = 0.0;
    std::size_t trials = 0;
    double standard_error = 0.0;
    double speed_standard_error = 0.0;
    std::size_t censored_trials = 0;
    std::size_t pool_size = 0;
};

enum class Algorithm { RandomSearch, Annealing };

/// How the device pool is produced: tabulate every k-click probability, or
/// draw chain-rule samples and keep those with k clicks.
enum class PoolMethod { Enumerate, ChainRule };

struct AdvantageConfig {
    ObjectiveKind objective = ObjectiveKind::Density;
    std::vector<std::size_t> k_values;
    std::size_t steps = 1000;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    Algorithm algorithm = Algorithm::RandomSearch;
    /// Mean click count the encoded device is tuned to; unset: k.
    std::optional<double> mean_clicks;
    NoiseConfig noise;
    PoolMethod pool_method = PoolMethod::Enumerate;
    /// Post-selected pool size (Enumerate) or raw chain-rule draws (ChainRule).
    std::size_t pool_size = 2000;
    AnnealingSchedule schedule;
    double jump_prob = 0.0;
};

/// Post-selected pool for k clicks from `state`.
SamplePool device_pool(const GaussianState& state, std::size_t k, PoolMethod method, std::size_t size,
                       std::uint64_t seed);

struct AdvantageStudy {
    std::vector<AdvantageReport> reports;
    /// enhanced[i][t], classical[i][t]: trial t for k_values[i].
    std::vector<std::vector<RunTrace>> enhanced;
    std::vector<std::vector<RunTrace>> classical;
};

/// For each k: encode, build the pool, run paired enhanced and classical
/// trials, and report both advantages at `steps`. An external pool replaces
/// the device pool (it is post-selected to each k).
AdvantageStudy advantage_study(const Graph& graph, const AdvantageConfig& config,
                               const SamplePool* external_pool = nullptr);

struct NoiseSweepConfig {
    ObjectiveKind objective = ObjectiveKind::MaxHaf;
    std::size_t k = 6;
    std::vector<double> eta_grid{1.0};
    std::vector<double> epsilon_grid{0.0};
    std::size_t trials = 200;
    std::uint64_t seed = 0;
    std::optional<double> mean_clicks;
    /// The target is the mean best value of uniform RS at this many steps.
    std::size_t classical_budget = 100;
    std::size_t classical_trials = 200;
    /// Enhanced trials still below target after this many steps are censored.
    std::size_t max_steps = 2000;
};

struct NoiseSweepRow {
    double eta = 1.0;
    double epsilon = 0.0;
    double p_hat = 0.0;
    std::size_t n_trials = 0;
    double ci95_low = 0.0;
    double ci95_high = 0.0;
    std::size_t censored_trials = 0;
    /// The noisy device never produces k clicks; p_hat is undefined.
    bool no_success = false;
};

struct NoiseSweep {
    double target = 0.0;
    std::vector<NoiseSweepRow> rows;  // eta-major over the grids
};

NoiseSweep noise_sweep(const Graph& graph, const NoiseSweepConfig& config);

std::string correlation_csv(const CorrelationStudy& study);
std::string correlation_json(const CorrelationStudy& study);
std::string advantage_csv(std::span<const AdvantageReport> reports);
std::string advantage_json(std::span<const AdvantageReport> reports);
std::string noise_sweep_csv(const NoiseSweep& sweep);
std::string noise_sweep_json(const NoiseSweep& sweep);

}  // namespace gbsgraph
