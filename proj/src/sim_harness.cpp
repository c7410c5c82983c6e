#include "d2d/sim_harness.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "d2d/errors.hpp"

namespace d2d {

namespace {

// Fixed tags deriving independent child streams from the trial seed.
constexpr std::uint64_t kTopologyTag = 0x544f504f;
constexpr std::uint64_t kAlgorithmTagBase = 0x414c4700;

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_time(double seconds, bool include_timing) {
    if (!include_timing) return "0";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", seconds);
    return buf;
}

TrialResult run_vertex_coloring(const Scenario& s, const SystemConfig& config, Rng& rng) {
    TrialResult r;
    r.algorithm = Algorithm::VertexColoring;

    auto search = adjust_gamma(s.links, s.fading, config.gamma_init, config.delta_gamma,
                               config.n_channels, rng);
    r.flag_inexact_bisection = !search.exact;
    r.n_groups = search.partition.n_groups();

    std::uint64_t value_seed = rng.next_u64();
    std::vector<GroupSolution> solutions;
    solutions.reserve(search.partition.n_groups());
    for (const auto& members : search.partition.groups) {
        PowerProblem problem = make_group_problem(members, s.links, s.fading, config);
        Rng group_rng(mix_seed(value_seed, member_set_hash(members)));
        solutions.push_back(
            optimize_group(problem, config.solver.restarts, group_rng, config.solver));
        if (!solutions.back().converged) r.flag_unconverged = true;
    }

    std::map<std::size_t, ModeDecision> decisions;
    for (const auto& members : search.partition.groups) {
        if (members.size() == 1 && !s.links.is_cellular(members[0])) {
            std::size_t pair = s.links.pair_of(members[0]);
            decisions[pair] = select_mode(pair, s.links.two_hop[pair],
                                          s.fading.zbar(members[0], members[0]), config);
        }
    }

    Allocation alloc =
        assign_channels(search.partition, solutions, decisions, s.links, config);
    r.sum_rate_bps = alloc.sum_rate_bps;
    r.n_served = alloc.n_served;
    return r;
}

}  // namespace

std::string to_string(Algorithm alg) {
    switch (alg) {
        case Algorithm::VertexColoring: return "vertex_coloring";
        case Algorithm::CoalitionalGame: return "coalitional_game";
        case Algorithm::NoReuse: return "no_reuse";
    }
    return "?";
}

Algorithm algorithm_from_string(const std::string& name) {
    if (name == "vertex_coloring" || name == "vc") return Algorithm::VertexColoring;
    if (name == "coalitional_game" || name == "cg") return Algorithm::CoalitionalGame;
    if (name == "no_reuse" || name == "nr") return Algorithm::NoReuse;
    throw ConfigError("unknown algorithm '" + name +
                      "' (expected vertex_coloring, coalitional_game or no_reuse)");
}

std::string TrialResult::flags_string() const {
    std::string s;
    if (flag_unconverged) s += "unconverged_solver";
    if (flag_inexact_bisection) {
        if (!s.empty()) s += '|';
        s += "inexact_bisection";
    }
    return s;
}

Scenario make_scenario(const SystemConfig& config, std::uint64_t seed) {
    config.validate();
    Rng rng(mix_seed(seed, kTopologyTag));
    Scenario s;
    s.topology = generate_topology(config, rng);
    auto [links, fading] = build_links(config, s.topology);
    s.links = std::move(links);
    s.fading = std::move(fading);
    return s;
}

TrialResult run_trial_on(const Scenario& scenario, const SystemConfig& config,
                         std::uint64_t seed, Algorithm algorithm) {
    Rng rng(mix_seed(seed, kAlgorithmTagBase + static_cast<std::uint64_t>(algorithm)));
    auto start = std::chrono::steady_clock::now();

    TrialResult r;
    switch (algorithm) {
        case Algorithm::VertexColoring:
            r = run_vertex_coloring(scenario, config, rng);
            break;
        case Algorithm::CoalitionalGame: {
            auto game = coalitional_game(scenario.links, scenario.fading, config, rng);
            r.algorithm = Algorithm::CoalitionalGame;
            r.sum_rate_bps = game.allocation.sum_rate_bps;
            r.n_served = game.allocation.n_served;
            r.n_groups = game.n_coalitions;
            r.flag_unconverged = !game.converged || !game.solver_converged;
            break;
        }
        case Algorithm::NoReuse: {
            auto alloc = no_reuse_benchmark(scenario.links, scenario.fading, config);
            r.algorithm = Algorithm::NoReuse;
            r.sum_rate_bps = alloc.sum_rate_bps;
            r.n_served = alloc.n_served;
            r.n_groups = scenario.links.size();  // every link stands alone
            break;
        }
    }

    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

TrialResult run_trial(const SystemConfig& config, std::uint64_t seed, Algorithm algorithm) {
    return run_trial_on(make_scenario(config, seed), config, seed, algorithm);
}

SweepResult run_sweep(const SystemConfig& base, const std::string& param,
                      const std::vector<double>& values,
                      const std::vector<Algorithm>& algorithms, std::size_t n_trials,
                      std::uint64_t base_seed) {
    if (n_trials < 1) throw ConfigError("n_trials must be >= 1");
    if (algorithms.empty()) throw ConfigError("no algorithms selected");

    SweepResult sweep;
    sweep.param = param;
    sweep.values = values;
    sweep.algorithms = algorithms;
    sweep.n_trials = n_trials;

    for (double value : values) {
        SystemConfig config = base;
        if (param != "none") set_config_field(config, param, value);
        config.validate();
        std::string hash = config_fingerprint(config);
        for (std::size_t t = 0; t < n_trials; ++t) {
            std::uint64_t seed = base_seed + t;
            Scenario scenario = make_scenario(config, seed);
            for (Algorithm alg : algorithms)
                sweep.rows.push_back(
                    {alg, value, t, run_trial_on(scenario, config, seed, alg), hash});
        }
    }
    return sweep;
}

SweepResult::Stats SweepResult::stats(Algorithm alg, double value,
                                      double (*field)(const TrialResult&)) const {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t n = 0;
    for (const auto& row : rows) {
        if (row.algorithm != alg || row.swept_value != value) continue;
        double v = field(row.result);
        sum += v;
        sum_sq += v * v;
        ++n;
    }
    Stats st;
    if (n == 0) return st;
    st.mean = sum / static_cast<double>(n);
    if (n > 1) {
        double var = (sum_sq - sum * st.mean) / static_cast<double>(n - 1);
        st.stddev = std::sqrt(std::max(0.0, var));
    }
    return st;
}

void write_trials_csv(std::ostream& out, const SweepResult& sweep, bool include_timing) {
    out << "algorithm,swept_value,trial,sum_rate_bps,n_served,wall_time_s,n_g,flags,config_hash\n";
    for (const auto& row : sweep.rows) {
        out << to_string(row.algorithm) << ',' << format_double(row.swept_value) << ','
            << row.trial << ',' << format_double(row.result.sum_rate_bps) << ','
            << row.result.n_served << ','
            << format_time(row.result.wall_time_s, include_timing) << ','
            << row.result.n_groups << ',' << row.result.flags_string() << ','
            << row.config_hash << '\n';
    }
}

void write_summary_csv(std::ostream& out, const SweepResult& sweep, bool include_timing) {
    out << "algorithm,swept_value,n_trials,sum_rate_mean,sum_rate_std,n_served_mean,"
           "n_served_std,wall_time_mean,wall_time_std,config_hash\n";
    for (double value : sweep.values) {
        std::string hash;
        for (const auto& row : sweep.rows)
            if (row.swept_value == value) {
                hash = row.config_hash;
                break;
            }
        for (Algorithm alg : sweep.algorithms) {
            auto rate = sweep.stats(alg, value, [](const TrialResult& r) { return r.sum_rate_bps; });
            auto served = sweep.stats(
                alg, value, [](const TrialResult& r) { return double(r.n_served); });
            auto time = sweep.stats(alg, value, [](const TrialResult& r) { return r.wall_time_s; });
            out << to_string(alg) << ',' << format_double(value) << ',' << sweep.n_trials << ','
                << format_double(rate.mean) << ',' << format_double(rate.stddev) << ','
                << format_double(served.mean) << ',' << format_double(served.stddev) << ','
                << format_time(time.mean, include_timing) << ','
                << format_time(time.stddev, include_timing) << ',' << hash << '\n';
        }
    }
}

}  // namespace d2d
