// d2dsim: trials, sweeps, and algorithm comparisons for the D2D
// resource-allocation simulator.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "d2d/errors.hpp"
#include "d2d/sim_harness.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::vector<std::string> algorithm_names{"vertex_coloring"};
    std::string output_path;
    std::string summary_path;
    std::size_t trials = 20;
    bool no_timing = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_trials) {
    cmd->add_option("--config", args.config_path, "Config file (key = value lines)");
    cmd->add_option("--seed", args.seed, "Base RNG seed (default: rng_seed from config)")
        ->each([&](const std::string&) { args.seed_given = true; });
    cmd->add_option("--algorithms", args.algorithm_names,
                    "Comma-separated: vertex_coloring|vc, coalitional_game|cg, no_reuse|nr")
        ->delimiter(',');
    cmd->add_option("--output,-o", args.output_path, "Per-trial CSV path");
    cmd->add_option("--summary", args.summary_path, "Summary CSV path (means/stddevs)");
    if (with_trials) cmd->add_option("--trials", args.trials, "Trials per configuration");
    cmd->add_flag("--no-timing", args.no_timing,
                  "Write wall_time_s as 0 so replayed output is byte-identical");
}

d2d::SystemConfig load_config(const CommonArgs& args) {
    d2d::SystemConfig cfg = args.config_path.empty()
                                ? d2d::SystemConfig{}
                                : d2d::parse_config_file(args.config_path);
    cfg.validate();
    return cfg;
}

std::vector<d2d::Algorithm> parse_algorithms(const std::vector<std::string>& names) {
    std::vector<d2d::Algorithm> algs;
    for (const auto& n : names) algs.push_back(d2d::algorithm_from_string(n));
    return algs;
}

// "delta_gamma=50,125,250" -> (param, values)
std::pair<std::string, std::vector<double>> parse_sweep_spec(const std::string& spec) {
    auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw d2d::ConfigError("sweep spec must look like param=v1,v2,... got '" + spec + "'");
    std::string param = spec.substr(0, eq);
    std::vector<double> values;
    std::stringstream ss(spec.substr(eq + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            values.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw d2d::ConfigError("bad sweep value '" + tok + "'");
        }
    }
    if (values.empty()) throw d2d::ConfigError("sweep spec has no values");
    return {param, values};
}

void write_csv_outputs(const d2d::SweepResult& sweep, const CommonArgs& args) {
    if (!args.output_path.empty()) {
        std::ofstream out(args.output_path);
        if (!out) throw d2d::ConfigError("cannot write '" + args.output_path + "'");
        d2d::write_trials_csv(out, sweep, !args.no_timing);
    }
    if (!args.summary_path.empty()) {
        std::ofstream out(args.summary_path);
        if (!out) throw d2d::ConfigError("cannot write '" + args.summary_path + "'");
        d2d::write_summary_csv(out, sweep, !args.no_timing);
    }
}

void print_summary_table(const d2d::SweepResult& sweep) {
    std::printf("%-18s %12s %16s %12s %12s\n", "algorithm", sweep.param.c_str(),
                "sum_rate_bps", "n_served", "time_s");
    for (double value : sweep.values) {
        for (d2d::Algorithm alg : sweep.algorithms) {
            auto rate = sweep.stats(alg, value,
                                    [](const d2d::TrialResult& r) { return r.sum_rate_bps; });
            auto served = sweep.stats(
                alg, value, [](const d2d::TrialResult& r) { return double(r.n_served); });
            auto time = sweep.stats(alg, value,
                                    [](const d2d::TrialResult& r) { return r.wall_time_s; });
            std::printf("%-18s %12g %16.6g %12.3f %12.4f\n", d2d::to_string(alg).c_str(), value,
                        rate.mean, served.mean, time.mean);
        }
    }
}

int run(int argc, char** argv) {
    CLI::App app{"D2D underlay resource-allocation simulator"};
    app.require_subcommand(1);

    CommonArgs trial_args;
    auto* trial_cmd = app.add_subcommand("trial", "Run a single trial");
    add_common(trial_cmd, trial_args, false);

    CommonArgs sweep_args;
    std::string sweep_spec;
    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one config parameter");
    add_common(sweep_cmd, sweep_args, true);
    sweep_cmd->add_option("--sweep", sweep_spec, "Spec: param=v1,v2,... e.g. delta_gamma=50,250")
        ->required();

    CommonArgs compare_args;
    auto* compare_cmd = app.add_subcommand("compare", "Compare algorithms on one config");
    add_common(compare_cmd, compare_args, true);

    CLI11_PARSE(app, argc, argv);

    if (trial_cmd->parsed()) {
        auto cfg = load_config(trial_args);
        std::uint64_t seed = trial_args.seed_given ? trial_args.seed : cfg.rng_seed;
        auto algs = parse_algorithms(trial_args.algorithm_names);
        d2d::SweepResult sweep =
            d2d::run_sweep(cfg, "none", {0.0}, algs, 1, seed);
        for (const auto& row : sweep.rows) {
            const auto& r = row.result;
            std::printf("%s: sum_rate=%.6g bps, served=%zu, groups=%zu, time=%.4fs%s%s\n",
                        d2d::to_string(r.algorithm).c_str(), r.sum_rate_bps, r.n_served,
                        r.n_groups, r.wall_time_s, r.flags_string().empty() ? "" : ", flags=",
                        r.flags_string().c_str());
        }
        write_csv_outputs(sweep, trial_args);
        return 0;
    }

    if (sweep_cmd->parsed()) {
        auto cfg = load_config(sweep_args);
        std::uint64_t seed = sweep_args.seed_given ? sweep_args.seed : cfg.rng_seed;
        auto [param, values] = parse_sweep_spec(sweep_spec);
        auto algs = parse_algorithms(sweep_args.algorithm_names);
        auto sweep = d2d::run_sweep(cfg, param, values, algs, sweep_args.trials, seed);
        print_summary_table(sweep);
        write_csv_outputs(sweep, sweep_args);
        return 0;
    }

    auto cfg = load_config(compare_args);
    std::uint64_t seed = compare_args.seed_given ? compare_args.seed : cfg.rng_seed;
    auto algs = parse_algorithms(compare_args.algorithm_names);
    auto sweep = d2d::run_sweep(cfg, "none", {0.0}, algs, compare_args.trials, seed);
    print_summary_table(sweep);
    write_csv_outputs(sweep, compare_args);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const d2d::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
