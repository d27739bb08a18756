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

#include "gbsgraph/cli.hpp"

#include <filesystem>
#include <iostream>
#include <optional>
#include <set>

#include "CLI11.hpp"
#include "gbsgraph/bench.hpp"
#include "gbsgraph/encoding.hpp"
#include "gbsgraph/error.hpp"
#include "gbsgraph/instances.hpp"
#include "gbsgraph/io.hpp"
#include "gbsgraph/parallel.hpp"
#include "gbsgraph/sampler.hpp"
#include "gbsgraph/solvers.hpp"
#include "json.hpp"

namespace gbsgraph {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Flat JSON config with field-level errors; unknown fields are rejected.
class Config {
   public:
    Config(const fs::path& path, std::string what) : what_(std::move(what)), dir_(path.parent_path()) {
        try {
            doc_ = json::parse(read_file(path));
        } catch (const json::parse_error& e) {
            throw ValidationError(what_ + ": invalid JSON: " + e.what());
        }
        if (!doc_.is_object()) {
            throw ValidationError(what_ + ": top level must be an object");
        }
    }

    const json& doc() const { return doc_; }

    bool has(const std::string& name) {
        known_.insert(name);
        return doc_.contains(name);
    }

    std::uint64_t seed() {
        if (!has("seed")) {
            throw ValidationError(what_ + ": missing required field 'seed'");
        }
        return unsigned_value("seed");
    }

    std::uint64_t unsigned_value(const std::string& name) {
        const json& v = require(name);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
            throw ValidationError(what_ + ": field '" + name + "' must be a nonnegative integer");
        }
        return v.get<std::uint64_t>();
    }

    std::size_t count(const std::string& name, std::optional<std::size_t> fallback = std::nullopt) {
        if (!has(name)) {
            if (fallback) {
                return *fallback;
            }
            throw ValidationError(what_ + ": missing required field '" + name + "'");
        }
        const std::uint64_t v = unsigned_value(name);
        if (v == 0) {
            throw ValidationError(what_ + ": field '" + name + "' must be at least 1");
        }
        return static_cast<std::size_t>(v);
    }

    double real(const std::string& name, std::optional<double> fallback = std::nullopt) {
        if (!has(name)) {
            if (fallback) {
                return *fallback;
            }
            throw ValidationError(what_ + ": missing required field '" + name + "'");
        }
        const json& v = require(name);
        if (!v.is_number()) {
            throw ValidationError(what_ + ": field '" + name + "' must be a number");
        }
        return v.get<double>();
    }

    std::optional<double> optional_real(const std::string& name) {
        if (!has(name)) {
            return std::nullopt;
        }
        return real(name);
    }

    std::string text(const std::string& name, std::optional<std::string> fallback = std::nullopt) {
        if (!has(name)) {
            if (fallback) {
                return *fallback;
            }
            throw ValidationError(what_ + ": missing required field '" + name + "'");
        }
        const json& v = require(name);
        if (!v.is_string()) {
            throw ValidationError(what_ + ": field '" + name + "' must be a string");
        }
        return v.get<std::string>();
    }

    std::vector<double> reals(const std::string& name) {
        const json& v = require(name);
        if (!v.is_array() || v.empty()) {
            throw ValidationError(what_ + ": field '" + name + "' must be a nonempty array of numbers");
        }
        std::vector<double> out;
        for (const auto& x : v) {
            if (!x.is_number()) {
                throw ValidationError(what_ + ": field '" + name + "' must contain only numbers");
            }
            out.push_back(x.get<double>());
        }
        return out;
    }

    // An integer or a nonempty array of integers.
    std::vector<std::size_t> counts(const std::string& name) {
        const json& v = require(name);
        std::vector<std::size_t> out;
        const json items = v.is_array() ? v : json::array({v});
        if (items.empty()) {
            throw ValidationError(what_ + ": field '" + name + "' must not be empty");
        }
        for (const auto& x : items) {
            if (!x.is_number_unsigned() || x.get<std::uint64_t>() == 0) {
                throw ValidationError(what_ + ": field '" + name + "' must hold positive integers");
            }
            out.push_back(x.get<std::size_t>());
        }
        return out;
    }

    fs::path path(const std::string& name) {
        const fs::path p = text(name);
        return p.is_absolute() ? p : dir_ / p;
    }

    ObjectiveKind objective(const std::string& name, const std::string& fallback) {
        try {
            return parse_objective_kind(text(name, fallback));
        } catch (const ValidationError& e) {
            throw ValidationError(what_ + ": field '" + name + "': " + e.what());
        }
    }

    void finish() const {
        for (auto it = doc_.begin(); it != doc_.end(); ++it) {
            if (known_.count(it.key()) == 0) {
                throw ValidationError(what_ + ": unknown field '" + it.key() + "'");
            }
        }
    }

   private:
    const json& require(const std::string& name) {
        known_.insert(name);
        if (!doc_.contains(name)) {
            throw ValidationError(what_ + ": missing required field '" + name + "'");
        }
        return doc_.at(name);
    }

    std::string what_;
    fs::path dir_;
    json doc_;
    std::set<std::string> known_;
};

void write_manifest(const fs::path& dir, const std::string& command, const json& config,
                    const std::vector<std::string>& outputs) {
    const json manifest = {{"format_version", kFormatVersion},
                           {"tool", "gbsgraph"},
                           {"tool_version", GBSGRAPH_VERSION},
                           {"command", command},
                           {"config", config},
                           {"outputs", outputs}};
    write_file_atomic(dir / "manifest.json", manifest.dump(1) + "\n");
}

void bench_correlate(const fs::path& config_path, const fs::path& out_dir, std::ostream& out) {
    Config cfg(config_path, "correlate config");
    const std::uint64_t seed = cfg.seed();
    const std::size_t n = cfg.count("n_matrices");
    const std::size_t modes = cfg.count("mode_count", 4);
    cfg.finish();
    const CorrelationStudy study = correlation_study(modes, n, seed);
    write_file_atomic(out_dir / "correlation.csv", correlation_csv(study));
    write_file_atomic(out_dir / "correlation.json", correlation_json(study));
    write_manifest(out_dir, "bench correlate", cfg.doc(), {"correlation.csv", "correlation.json"});
    out << "rho(tor, haf_sq) = " << study.rho_tor_haf << ", rho(tor, density) = " << study.rho_tor_density << "\n";
}

void bench_advantage(const fs::path& config_path, const fs::path& out_dir, std::ostream& out) {
    Config cfg(config_path, "advantage config");
    AdvantageConfig ac;
    ac.seed = cfg.seed();
    const GraphFile graph = load_graph(cfg.path("graph"));
    ac.objective = cfg.objective("objective", "density");
    ac.k_values = cfg.counts("k");
    ac.steps = cfg.count("steps");
    ac.trials = cfg.count("trials");
    const std::string algo = cfg.text("algorithm", "rs");
    if (algo == "rs") {
        ac.algorithm = Algorithm::RandomSearch;
    } else if (algo == "sa") {
        ac.algorithm = Algorithm::Annealing;
    } else {
        throw ValidationError("advantage config: field 'algorithm' must be \"rs\" or \"sa\"");
    }
    ac.mean_clicks = cfg.optional_real("mean_clicks");
    ac.noise.eta = cfg.real("eta", 1.0);
    ac.noise.epsilon = cfg.real("epsilon", 0.0);
    const std::string method = cfg.text("pool_method", "enumerate");
    if (method == "enumerate") {
        ac.pool_method = PoolMethod::Enumerate;
    } else if (method == "chain-rule") {
        ac.pool_method = PoolMethod::ChainRule;
    } else {
        throw ValidationError("advantage config: field 'pool_method' must be \"enumerate\" or \"chain-rule\"");
    }
    ac.pool_size = cfg.count("pool_size", 2000);
    ac.schedule.initial_temperature = cfg.real("sa_initial_temperature", 1.0);
    ac.schedule.cooling = cfg.real("sa_cooling", 0.995);
    ac.jump_prob = cfg.real("jump_prob", 0.0);
    std::optional<SamplePool> external;
    if (cfg.has("pool")) {
        external = load_pool(cfg.path("pool"));
    }
    cfg.finish();

    const AdvantageStudy study = advantage_study(graph.graph, ac, external ? &*external : nullptr);
    write_file_atomic(out_dir / "advantage.csv", advantage_csv(study.reports));
    write_file_atomic(out_dir / "advantage.json", advantage_json(study.reports));
    write_manifest(out_dir, "bench advantage", cfg.doc(), {"advantage.csv", "advantage.json"});
    for (const auto& r : study.reports) {
        out << "k=" << r.photon_click_k << " score_advantage=" << r.score_advantage
            << " speed_advantage=" << r.speed_advantage << "\n";
    }
}

void bench_noise_sweep(const fs::path& config_path, const fs::path& out_dir, std::ostream& out) {
    Config cfg(config_path, "noise-sweep config");
    NoiseSweepConfig nc;
    nc.seed = cfg.seed();
    const GraphFile graph = load_graph(cfg.path("graph"));
    nc.objective = cfg.objective("objective", "maxhaf");
    nc.k = cfg.count("k");
    nc.eta_grid = cfg.reals("eta_grid");
    nc.epsilon_grid = cfg.reals("epsilon_grid");
    nc.trials = cfg.count("trials");
    nc.mean_clicks = cfg.optional_real("mean_clicks");
    nc.classical_budget = cfg.count("classical_budget", 100);
    nc.classical_trials = cfg.count("classical_trials", 200);
    nc.max_steps = cfg.count("max_steps", 2000);
    cfg.finish();

    const NoiseSweep sweep = noise_sweep(graph.graph, nc);
    write_file_atomic(out_dir / "noise_sweep.csv", noise_sweep_csv(sweep));
    write_file_atomic(out_dir / "noise_sweep.json", noise_sweep_json(sweep));
    write_manifest(out_dir, "bench noise-sweep", cfg.doc(), {"noise_sweep.csv", "noise_sweep.json"});
    out << "target=" << sweep.target << "\n";
    for (const auto& r : sweep.rows) {
        out << "eta=" << r.eta << " epsilon=" << r.epsilon << " p_hat=" << r.p_hat
            << (r.no_success ? " (no success)" : "") << "\n";
    }
}

fs::path summary_path(const fs::path& csv) {
    fs::path p = csv;
    p.replace_extension(".json");
    if (p == csv) {
        p += ".json";
    }
    return p;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gaussian boson sampling simulation for dense-subgraph and Max-Haf search", "gbsgraph"};
    app.require_subcommand(1);
    std::size_t threads = 0;
    app.add_option("--threads", threads, "Cap on worker threads (0 = hardware concurrency)");
    app.set_version_flag("--version", std::string(GBSGRAPH_VERSION));

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a graph instance");
    std::string gen_kind;
    std::size_t gen_n = 0;
    std::uint64_t gen_seed = 0;
    double gen_edge_prob = 0.5;
    std::size_t gen_clique = 0;
    double gen_noise = 0.1;
    std::string gen_out;
    gen->add_option("--kind", gen_kind, "Instance family")
        ->required()
        ->check(CLI::IsMember({"random-complex", "planted-clique", "zero-one"}));
    gen->add_option("--n", gen_n, "Vertex count")->required();
    gen->add_option("--seed", gen_seed, "RNG seed")->required();
    gen->add_option("--edge-prob", gen_edge_prob, "Edge probability (zero-one)");
    gen->add_option("--clique", gen_clique, "Planted clique size (planted-clique)");
    gen->add_option("--noise", gen_noise, "Noise edge probability (planted-clique)");
    gen->add_option("--out", gen_out, "Graph JSON path")->required();

    // encode
    auto* enc = app.add_subcommand("encode", "Encode a graph into device parameters");
    std::string enc_graph;
    std::string enc_out;
    std::optional<double> enc_mean;
    std::optional<double> enc_scale;
    enc->add_option("--graph", enc_graph, "Graph JSON path")->required();
    auto* mean_opt = enc->add_option("--mean-clicks", enc_mean, "Target expected click count");
    auto* scale_opt = enc->add_option("--scale", enc_scale, "Rescaling factor c");
    mean_opt->excludes(scale_opt);
    enc->add_option("--out", enc_out, "Device JSON path")->required();

    // sample
    auto* smp = app.add_subcommand("sample", "Draw exact threshold-detector samples");
    std::string smp_device;
    std::size_t smp_count = 0;
    double smp_eta = 1.0;
    double smp_epsilon = 0.0;
    std::uint64_t smp_seed = 0;
    std::string smp_out;
    smp->add_option("--device", smp_device, "Device JSON path")->required();
    smp->add_option("--count", smp_count, "Number of samples")->required();
    smp->add_option("--eta", smp_eta, "Transmission in [0, 1]");
    smp->add_option("--epsilon", smp_epsilon, "Thermal fraction in [0, 1]");
    smp->add_option("--seed", smp_seed, "RNG seed")->required();
    smp->add_option("--out", smp_out, "Sample file path")->required();

    // solve
    auto* slv = app.add_subcommand("solve", "Search for a dense or high-Hafnian subgraph");
    std::string slv_graph;
    std::string slv_objective = "density";
    std::size_t slv_k = 0;
    std::string slv_algo = "rs";
    std::string slv_pool;
    std::size_t slv_steps = 1000;
    std::uint64_t slv_seed = 0;
    std::string slv_out;
    double slv_t0 = 1.0;
    double slv_alpha = 0.995;
    double slv_jump = 0.0;
    slv->add_option("--graph", slv_graph, "Graph JSON path")->required();
    slv->add_option("--objective", slv_objective, "maxhaf or density")
        ->check(CLI::IsMember({"maxhaf", "max-haf", "density"}));
    slv->add_option("--k", slv_k, "Subgraph size")->required();
    slv->add_option("--algo", slv_algo, "rs, sa or greedy")->check(CLI::IsMember({"rs", "sa", "greedy"}));
    slv->add_option("--pool", slv_pool, "Sample file used as the proposal pool");
    slv->add_option("--steps", slv_steps, "Step budget");
    slv->add_option("--seed", slv_seed, "RNG seed");
    slv->add_option("--t0", slv_t0, "Annealing initial temperature");
    slv->add_option("--alpha", slv_alpha, "Annealing cooling factor");
    slv->add_option("--jump-prob", slv_jump, "Annealing pool-jump probability");
    slv->add_option("--out", slv_out, "Trace CSV path (a JSON summary is written beside it)")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "Run a benchmark study");
    bench->require_subcommand(1);
    std::string bench_config;
    std::string bench_out;
    std::vector<CLI::App*> bench_cmds;
    for (const char* name : {"correlate", "advantage", "noise-sweep"}) {
        auto* sub = bench->add_subcommand(name);
        sub->add_option("--config", bench_config, "Config JSON path")->required();
        sub->add_option("--out", bench_out, "Report directory")->required();
        bench_cmds.push_back(sub);
    }

    std::vector<std::string> argv_store{"gbsgraph"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) {
        argv.push_back(a.data());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        parallel::set_max_workers(threads);
        if (gen->parsed()) {
            GraphFile file;
            if (gen_kind == "random-complex") {
                file.graph = random_complex_graph(gen_n, gen_seed);
            } else if (gen_kind == "zero-one") {
                file.graph = zero_one_graph(gen_n, gen_edge_prob, gen_seed);
            } else {
                if (gen->count("--clique") == 0) {
                    throw ValidationError("planted-clique needs --clique");
                }
                PlantedInstance inst = planted_clique(gen_n, gen_clique, gen_noise, gen_seed);
                file.graph = std::move(inst.graph);
                file.planted = std::move(inst.clique);
            }
            save_graph(file, gen_out);
            out << "wrote " << gen_out << "\n";
        } else if (enc->parsed()) {
            if (enc_mean.has_value() == enc_scale.has_value()) {
                throw ValidationError("encode needs exactly one of --mean-clicks and --scale");
            }
            const Graph g = load_graph(enc_graph).graph;
            DeviceParams device;
            if (enc_scale) {
                device = encode_graph(g, *enc_scale);
            } else if (max_scale(g) == INFINITY) {
                // An edgeless graph encodes to vacuum; no scale reaches a positive target.
                throw ValidationError("target mean clicks unreachable: the graph has no weight (supremum 0)");
            } else {
                device = encode_graph(g, choose_scale(g, *enc_mean));
            }
            save_device(device, enc_out);
            out << "scale=" << format_double(device.scale) << " expected_clicks="
                << format_double(expected_clicks(state_from_device(device.device()))) << "\n";
        } else if (smp->parsed()) {
            const DeviceParams device = load_device(smp_device);
            const GaussianState state = noisy_device_state(device.device(), {smp_eta, smp_epsilon});
            const SamplePool pool = sample(state, smp_count, smp_seed);
            save_pool(pool, smp_out,
                      {"device=" + fs::path(smp_device).filename().string(), "count=" + std::to_string(smp_count),
                       "eta=" + format_double(smp_eta), "epsilon=" + format_double(smp_epsilon)});
            out << "wrote " << pool.size() << " samples to " << smp_out << "\n";
        } else if (slv->parsed()) {
            const Graph g = load_graph(slv_graph).graph;
            const Objective objective(parse_objective_kind(slv_objective), g, slv_k);
            ProposalSource source = ProposalSource::uniform();
            if (!slv_pool.empty()) {
                SamplePool pool = load_pool(slv_pool);
                if (pool.modes != g.vertex_count()) {
                    throw ValidationError("pool has " + std::to_string(pool.modes) + " modes; the graph has " +
                                          std::to_string(g.vertex_count()) + " vertices");
                }
                pool = postselect(pool, slv_k);
                if (pool.empty()) {
                    throw ValidationError("pool has no " + std::to_string(slv_k) + "-click samples");
                }
                source = ProposalSource::from_pool(std::move(pool));
            }
            RunTrace trace;
            if (slv_algo == "greedy") {
                trace.best_subset = greedy_peel(g, slv_k);
                trace.best_value_at_step.push_back({1, objective.evaluate(trace.best_subset)});
                trace.steps_used = 1;
                trace.seed = slv_seed;
            } else if (slv_algo == "rs") {
                trace = random_search(objective, source, slv_steps, slv_seed);
            } else {
                trace = simulated_annealing(objective, source, slv_steps, {slv_t0, slv_alpha}, slv_jump, slv_seed);
            }
            json summary = {{"format_version", kFormatVersion},
                            {"algorithm", slv_algo},
                            {"objective", std::string(to_string(objective.kind()))},
                            {"k", slv_k},
                            {"steps", trace.steps_used},
                            {"seed", slv_seed},
                            {"best_subset", trace.best_subset},
                            {"best_value", trace.best_value()},
                            {"pool", slv_pool.empty() ? json(nullptr) : json(fs::path(slv_pool).filename().string())}};
            if (!slv_pool.empty()) {
                summary["pool_start"] = trace.pool_start;
                summary["pool_wrapped"] = trace.pool_wrapped;
            }
            if (slv_algo == "sa") {
                summary["sa_initial_temperature"] = slv_t0;
                summary["sa_cooling"] = slv_alpha;
                summary["jump_prob"] = slv_jump;
            }
            write_file_atomic(slv_out, trace_to_csv(trace));
            write_file_atomic(summary_path(slv_out), summary.dump(1) + "\n");
            out << "best_value=" << format_double(trace.best_value()) << "\n";
        } else {
            const fs::path config = bench_config;
            const fs::path dir = bench_out;
            if (bench_cmds[0]->parsed()) {
                bench_correlate(config, dir, out);
            } else if (bench_cmds[1]->parsed()) {
                bench_advantage(config, dir, out);
            } else {
                bench_noise_sweep(config, dir, out);
            }
        }
    } catch (const CostGuardError& e) {
        err << "error: " << e.what() << "\n";
        return kExitCostGuard;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}

}  // namespace gbsgraph
