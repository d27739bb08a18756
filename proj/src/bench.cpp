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

#include "gbsgraph/bench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gbsgraph/encoding.hpp"
#include "gbsgraph/error.hpp"
#include "gbsgraph/instances.hpp"
#include "gbsgraph/io.hpp"
#include "gbsgraph/linalg.hpp"
#include "gbsgraph/matfn.hpp"
#include "gbsgraph/parallel.hpp"
#include "json.hpp"

namespace gbsgraph {
namespace {

using nlohmann::json;

constexpr double kCorrelationNorm = 0.9;
constexpr double kZ95 = 1.959963984540054;
constexpr std::size_t kMaxSweepModes = 24;
constexpr std::size_t kMaxSweepClicks = 10;

std::vector<double> average_ranks(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) {
            ++j;
        }
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) {
            ranks[order[t]] = r;
        }
        i = j + 1;
    }
    return ranks;
}

struct MeanVar {
    double mean = 0.0;
    double var_of_mean = 0.0;
};

MeanVar mean_and_error(const std::vector<double>& v) {
    MeanVar out;
    const auto n = static_cast<double>(v.size());
    out.mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    if (v.size() > 1) {
        double ss = 0.0;
        for (const double x : v) {
            ss += (x - out.mean) * (x - out.mean);
        }
        out.var_of_mean = ss / (n - 1.0) / n;
    }
    return out;
}

// Standard error of a / b for independent means.
double ratio_error(const MeanVar& a, const MeanVar& b) {
    const double r = a.mean / b.mean;
    const double rel = (a.mean != 0.0 ? a.var_of_mean / (a.mean * a.mean) : 0.0) + b.var_of_mean / (b.mean * b.mean);
    return std::abs(r) * std::sqrt(rel);
}

void require_paired(std::span<const RunTrace> enhanced, std::span<const RunTrace> classical) {
    if (enhanced.empty() || classical.empty()) {
        throw ValidationError("advantage needs nonempty trace sets");
    }
    if (enhanced.size() != classical.size()) {
        throw ValidationError("speed advantage pairs trials by index; the trace sets differ in size");
    }
}

std::size_t first_reaching(const RunTrace& trace, double target, std::size_t budget) {
    for (const auto& p : trace.best_value_at_step) {
        if (p.step > budget) {
            break;
        }
        if (p.value >= target) {
            return p.step;
        }
    }
    return 0;
}

void require_unit_interval(std::span<const double> grid, const char* name) {
    if (grid.empty()) {
        throw ValidationError(std::string(name) + " must not be empty");
    }
    for (const double v : grid) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw ValidationError(std::string(name) + " values must lie in [0, 1]");
        }
    }
}

json fit_json(const NoiseSweepRow& r) {
    return {{"eta", r.eta},
            {"epsilon", r.epsilon},
            {"p_hat", r.p_hat},
            {"n_trials", r.n_trials},
            {"ci95_low", r.ci95_low},
            {"ci95_high", r.ci95_high},
            {"censored_trials", r.censored_trials},
            {"no_success", r.no_success}};
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw ValidationError("spearman needs two equal-length series of at least 2 values");
    }
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const auto n = static_cast<double>(x.size());
    const double mean = (n + 1.0) / 2.0;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (rx[i] - mean) * (ry[i] - mean);
        sxx += (rx[i] - mean) * (rx[i] - mean);
        syy += (ry[i] - mean) * (ry[i] - mean);
    }
    if (sxx == 0.0 || syy == 0.0) {
        return 0.0;
    }
    return sxy / std::sqrt(sxx * syy);
}

double spearman_z(double rho, std::size_t n) { return n < 2 ? 0.0 : rho * std::sqrt(static_cast<double>(n - 1)); }

CorrelationRow correlation_row(const ComplexMatrix& a) {
    if (!a.is_square() || !is_symmetric(a, 1e-10)) {
        throw ValidationError("correlation row needs a square symmetric matrix");
    }
    if (!(spectral_norm(a) < 1.0)) {
        throw ValidationError("correlation row needs spectral norm below 1");
    }
    const std::size_t m = a.rows();
    const ComplexMatrix id = ComplexMatrix::identity(m);
    // Pure state: sigma_Q = (I - X A_full)^{-1}.
    const ComplexMatrix b = ComplexMatrix::block(id, a.conjugate() * Complex{-1.0}, a * Complex{-1.0}, id);
    ComplexMatrix sigma = inverse(b);
    sigma = (sigma + sigma.adjoint()) * Complex{0.5};
    const GaussianState state(std::move(sigma));

    CorrelationRow row;
    row.tor = torontonian(ComplexMatrix::identity(2 * m) - inverse(state.husimi()));
    row.haf_sq = std::norm(hafnian(a));
    Complex sum{};
    for (const Complex& z : a.entries()) {
        sum += z;
    }
    row.density = std::abs(sum);
    return row;
}

CorrelationStudy correlation_study(std::size_t mode_count, std::size_t n_matrices, std::uint64_t seed) {
    if (n_matrices < 2) {
        throw ValidationError("correlation study needs at least 2 matrices");
    }
    if (mode_count == 0 || mode_count % 2 != 0 || mode_count > kMaxTorontonianModes) {
        throw ValidationError("correlation study needs an even mode count of at most " +
                              std::to_string(kMaxTorontonianModes));
    }
    Rng rng = make_rng(seed, 0);
    std::vector<ComplexMatrix> matrices;
    matrices.reserve(n_matrices);
    for (std::size_t i = 0; i < n_matrices; ++i) {
        matrices.push_back(random_complex_symmetric(mode_count, rng, kCorrelationNorm));
    }
    CorrelationStudy study;
    study.rows.resize(n_matrices);
    parallel::for_each_index(n_matrices, [&](std::size_t i) { study.rows[i] = correlation_row(matrices[i]); });

    std::vector<double> tor;
    std::vector<double> haf;
    std::vector<double> dens;
    for (const auto& r : study.rows) {
        tor.push_back(r.tor);
        haf.push_back(r.haf_sq);
        dens.push_back(r.density);
    }
    study.rho_tor_haf = spearman(tor, haf);
    study.rho_tor_density = spearman(tor, dens);
    return study;
}

Estimate score_advantage(std::span<const RunTrace> enhanced, std::span<const RunTrace> classical,
                         std::size_t at_step) {
    if (enhanced.empty() || classical.empty()) {
        throw ValidationError("score advantage needs nonempty trace sets");
    }
    std::vector<double> e;
    std::vector<double> c;
    for (const auto* set : {&enhanced, &classical}) {
        for (const RunTrace& t : *set) {
            if (at_step == 0 || at_step > t.best_value_at_step.size()) {
                throw ValidationError("score advantage step " + std::to_string(at_step) +
                                      " is outside a trace of length " + std::to_string(t.best_value_at_step.size()));
            }
            (set == &enhanced ? e : c).push_back(t.best_at(at_step));
        }
    }
    const MeanVar me = mean_and_error(e);
    const MeanVar mc = mean_and_error(c);
    if (mc.mean == 0.0) {
        throw ValidationError("score advantage undefined: the classical mean is zero");
    }
    return {me.mean / mc.mean, ratio_error(me, mc)};
}

SpeedAdvantage speed_advantage(std::span<const RunTrace> enhanced, std::span<const RunTrace> classical,
                               std::size_t budget) {
    require_paired(enhanced, classical);
    if (budget == 0) {
        throw ValidationError("speed advantage budget must be at least 1");
    }
    SpeedAdvantage out;
    std::vector<double> e_steps;
    std::vector<double> c_steps;
    for (std::size_t i = 0; i < classical.size(); ++i) {
        if (classical[i].best_value_at_step.size() < budget) {
            throw ValidationError("classical trace " + std::to_string(i) + " is shorter than the budget");
        }
        const double target = classical[i].best_at(budget);
        c_steps.push_back(static_cast<double>(first_reaching(classical[i], target, budget)));
        const std::size_t hit = first_reaching(enhanced[i], target, budget);
        if (hit == 0) {
            ++out.censored_trials;
            e_steps.push_back(static_cast<double>(budget));
        } else {
            e_steps.push_back(static_cast<double>(hit));
        }
    }
    const MeanVar mc = mean_and_error(c_steps);
    const MeanVar me = mean_and_error(e_steps);
    out.value = mc.mean / me.mean;
    out.standard_error = ratio_error(mc, me);
    return out;
}

GeometricFit geometric_fit(std::span<const std::size_t> steps) {
    if (steps.empty()) {
        throw ValidationError("geometric fit needs at least one step count");
    }
    double sum = 0.0;
    for (const std::size_t s : steps) {
        if (s == 0) {
            throw ValidationError("step counts must be at least 1");
        }
        sum += static_cast<double>(s);
    }
    GeometricFit fit;
    fit.n_trials = steps.size();
    fit.p_hat = static_cast<double>(steps.size()) / sum;
    const double half = kZ95 * fit.p_hat * std::sqrt((1.0 - fit.p_hat) / static_cast<double>(fit.n_trials));
    fit.ci95_low = std::max(0.0, fit.p_hat - half);
    fit.ci95_high = std::min(1.0, fit.p_hat + half);
    return fit;
}

double geometric_z(const GeometricFit& a, const GeometricFit& b) {
    auto var = [](const GeometricFit& f) {
        return f.n_trials == 0 ? 0.0 : f.p_hat * f.p_hat * (1.0 - f.p_hat) / static_cast<double>(f.n_trials);
    };
    const double diff = a.p_hat - b.p_hat;
    const double se = std::sqrt(var(a) + var(b));
    if (se == 0.0) {
        return diff > 0.0 ? INFINITY : (diff < 0.0 ? -INFINITY : 0.0);
    }
    return diff / se;
}

SamplePool device_pool(const GaussianState& state, std::size_t k, PoolMethod method, std::size_t size,
                       std::uint64_t seed) {
    if (method == PoolMethod::Enumerate) {
        return sample_postselected(state, k, size, seed);
    }
    return postselect(sample(state, size, seed), k);
}

AdvantageStudy advantage_study(const Graph& graph, const AdvantageConfig& config, const SamplePool* external_pool) {
    if (config.k_values.empty()) {
        throw ValidationError("advantage study needs at least one k");
    }
    if (config.trials == 0 || config.steps == 0) {
        throw ValidationError("advantage study needs trials >= 1 and steps >= 1");
    }
    config.noise.validate();
    if (config.algorithm == Algorithm::Annealing) {
        config.schedule.validate();
    }
    AdvantageStudy study;
    for (std::size_t ki = 0; ki < config.k_values.size(); ++ki) {
        const std::size_t k = config.k_values[ki];
        const Objective objective(config.objective, graph, k);
        const std::uint64_t k_seed = derive_seed(config.seed, ki);

        SamplePool pool;
        if (external_pool != nullptr) {
            pool = postselect(*external_pool, k);
        } else {
            const double target = config.mean_clicks.value_or(static_cast<double>(k));
            const DeviceParams device = encode_graph(graph, choose_scale(graph, target));
            const GaussianState state = noisy_device_state(device.device(), config.noise);
            pool = device_pool(state, k, config.pool_method, config.pool_size, derive_seed(k_seed, 0));
        }
        if (pool.empty()) {
            throw ValidationError("the pool has no " + std::to_string(k) + "-click samples");
        }
        const ProposalSource enhanced_source = ProposalSource::from_pool(std::move(pool));
        const ProposalSource uniform = ProposalSource::uniform();

        std::vector<RunTrace> enhanced(config.trials);
        std::vector<RunTrace> classical(config.trials);
        parallel::for_each_index(config.trials, [&](std::size_t t) {
            const std::uint64_t se = derive_seed(k_seed, 1 + 2 * t);
            const std::uint64_t sc = derive_seed(k_seed, 2 + 2 * t);
            if (config.algorithm == Algorithm::RandomSearch) {
                enhanced[t] = random_search(objective, enhanced_source, config.steps, se);
                classical[t] = random_search(objective, uniform, config.steps, sc);
            } else {
                enhanced[t] =
                    simulated_annealing(objective, enhanced_source, config.steps, config.schedule, config.jump_prob, se);
                classical[t] = simulated_annealing(objective, uniform, config.steps, config.schedule, 0.0, sc);
            }
        });

        AdvantageReport report;
        report.photon_click_k = k;
        report.trials = config.trials;
        report.pool_size = enhanced_source.pool.size();
        const Estimate score = score_advantage(enhanced, classical, config.steps);
        report.score_advantage = score.value;
        report.standard_error = score.standard_error;
        const SpeedAdvantage speed = speed_advantage(enhanced, classical, config.steps);
        report.speed_advantage = speed.value;
        report.speed_standard_error = speed.standard_error;
        report.censored_trials = speed.censored_trials;
        study.reports.push_back(report);
        study.enhanced.push_back(std::move(enhanced));
        study.classical.push_back(std::move(classical));
    }
    return study;
}

NoiseSweep noise_sweep(const Graph& graph, const NoiseSweepConfig& config) {
    require_unit_interval(config.eta_grid, "eta_grid");
    require_unit_interval(config.epsilon_grid, "epsilon_grid");
    if (graph.vertex_count() > kMaxSweepModes) {
        throw CostGuardError("noise sweep supports at most " + std::to_string(kMaxSweepModes) + " vertices");
    }
    if (config.k > kMaxSweepClicks) {
        throw CostGuardError("noise sweep supports k <= " + std::to_string(kMaxSweepClicks));
    }
    if (config.trials == 0 || config.classical_trials == 0 || config.classical_budget == 0 || config.max_steps == 0) {
        throw ValidationError("noise sweep needs positive trials, classical_trials, classical_budget and max_steps");
    }
    const Objective objective(config.objective, graph, config.k);

    NoiseSweep sweep;
    std::vector<double> classical_best(config.classical_trials);
    const std::uint64_t classical_seed = derive_seed(config.seed, 0);
    parallel::for_each_index(config.classical_trials, [&](std::size_t t) {
        classical_best[t] = random_search(objective, ProposalSource::uniform(), config.classical_budget,
                                          derive_seed(classical_seed, t))
                                .best_value();
    });
    sweep.target = std::accumulate(classical_best.begin(), classical_best.end(), 0.0) /
                   static_cast<double>(classical_best.size());

    const double mean_clicks = config.mean_clicks.value_or(static_cast<double>(config.k));
    const DeviceParams device = encode_graph(graph, choose_scale(graph, mean_clicks));

    std::size_t point = 0;
    for (const double eta : config.eta_grid) {
        for (const double epsilon : config.epsilon_grid) {
            const std::uint64_t point_seed = derive_seed(config.seed, 1 + point++);
            NoiseSweepRow row;
            row.eta = eta;
            row.epsilon = epsilon;
            const GaussianState state = noisy_device_state(device.device(), {eta, epsilon});
            const PostselectedDistribution dist = enumerate_k_clicks(state, config.k);
            if (!(dist.total > 0.0)) {
                row.no_success = true;
                sweep.rows.push_back(row);
                continue;
            }
            // Each trial reads its own i.i.d. pool from the start, so trials are independent.
            std::vector<std::size_t> steps(config.trials, 0);
            parallel::for_each_index(config.trials, [&](std::size_t t) {
                const std::uint64_t trial_seed = derive_seed(point_seed, t);
                const ProposalSource source = ProposalSource::from_pool(
                    sample_postselected(dist, config.max_steps, derive_seed(trial_seed, 0)), 0);
                const RunTrace trace =
                    random_search(objective, source, config.max_steps, trial_seed, {.stop_above = sweep.target});
                if (trace.best_value() > sweep.target) {
                    steps[t] = trace.steps_used;
                }
            });
            std::vector<std::size_t> successes;
            for (const std::size_t s : steps) {
                if (s == 0) {
                    ++row.censored_trials;
                } else {
                    successes.push_back(s);
                }
            }
            if (!successes.empty()) {
                const GeometricFit fit = geometric_fit(successes);
                row.p_hat = fit.p_hat;
                row.n_trials = fit.n_trials;
                row.ci95_low = fit.ci95_low;
                row.ci95_high = fit.ci95_high;
            }
            sweep.rows.push_back(row);
        }
    }
    return sweep;
}

std::string correlation_csv(const CorrelationStudy& study) {
    std::string out = "tor,haf_sq,density\n";
    for (const auto& r : study.rows) {
        out += format_double(r.tor) + "," + format_double(r.haf_sq) + "," + format_double(r.density) + "\n";
    }
    return out;
}

std::string correlation_json(const CorrelationStudy& study) {
    json rows = json::array();
    for (const auto& r : study.rows) {
        rows.push_back({{"tor", r.tor}, {"haf_sq", r.haf_sq}, {"density", r.density}});
    }
    const std::size_t n = study.rows.size();
    const json out = {{"format_version", kFormatVersion},
                      {"n", n},
                      {"rho_tor_haf", study.rho_tor_haf},
                      {"rho_tor_density", study.rho_tor_density},
                      {"z_tor_haf", spearman_z(study.rho_tor_haf, n)},
                      {"z_tor_density", spearman_z(study.rho_tor_density, n)},
                      {"rows", rows}};
    return out.dump(1) + "\n";
}

std::string advantage_csv(std::span<const AdvantageReport> reports) {
    std::string out =
        "photon_click_k,score_advantage,speed_advantage,trials,standard_error,speed_standard_error,censored_trials,"
        "pool_size\n";
    for (const auto& r : reports) {
        out += std::to_string(r.photon_click_k) + "," + format_double(r.score_advantage) + "," +
               format_double(r.speed_advantage) + "," + std::to_string(r.trials) + "," +
               format_double(r.standard_error) + "," + format_double(r.speed_standard_error) + "," +
               std::to_string(r.censored_trials) + "," + std::to_string(r.pool_size) + "\n";
    }
    return out;
}

std::string advantage_json(std::span<const AdvantageReport> reports) {
    json rows = json::array();
    for (const auto& r : reports) {
        rows.push_back({{"photon_click_k", r.photon_click_k},
                        {"score_advantage", r.score_advantage},
                        {"speed_advantage", r.speed_advantage},
                        {"trials", r.trials},
                        {"standard_error", r.standard_error},
                        {"speed_standard_error", r.speed_standard_error},
                        {"censored_trials", r.censored_trials},
                        {"pool_size", r.pool_size}});
    }
    const json out = {{"format_version", kFormatVersion}, {"reports", rows}};
    return out.dump(1) + "\n";
}

std::string noise_sweep_csv(const NoiseSweep& sweep) {
    std::string out = "eta,epsilon,p_hat,n_trials,ci95_low,ci95_high,censored_trials,no_success\n";
    for (const auto& r : sweep.rows) {
        out += format_double(r.eta) + "," + format_double(r.epsilon) + "," + format_double(r.p_hat) + "," +
               std::to_string(r.n_trials) + "," + format_double(r.ci95_low) + "," + format_double(r.ci95_high) +
               "," + std::to_string(r.censored_trials) + "," + (r.no_success ? "true" : "false") + "\n";
    }
    return out;
}

std::string noise_sweep_json(const NoiseSweep& sweep) {
    json rows = json::array();
    for (const auto& r : sweep.rows) {
        rows.push_back(fit_json(r));
    }
    const json out = {{"format_version", kFormatVersion}, {"target", sweep.target}, {"rows", rows}};
    return out.dump(1) + "\n";
}

}  // namespace gbsgraph
