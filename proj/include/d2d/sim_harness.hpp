// End-to-end trial orchestration, seeded Monte Carlo sweeps, and
// machine-readable result output.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "d2d/baselines.hpp"

namespace d2d {

enum class Algorithm { VertexColoring, CoalitionalGame, NoReuse };

std::string to_string(Algorithm alg);
Algorithm algorithm_from_string(const std::string& name);  // throws ConfigError

struct TrialResult {
    Algorithm algorithm = Algorithm::VertexColoring;
    double sum_rate_bps = 0.0;
    std::size_t n_served = 0;
    double wall_time_s = 0.0;
    std::size_t n_groups = 0;
    bool flag_unconverged = false;       // some power solve missed its tolerance
    bool flag_inexact_bisection = false; // threshold search could not hit the budget

    std::string flags_string() const;
};

// Topology and gains shared by all algorithms within one trial.
struct Scenario {
    Topology topology;
    LinkTable links;
    FadingMatrix fading;
};

Scenario make_scenario(const SystemConfig& config, std::uint64_t seed);

// Runs one algorithm on a prepared scenario. Wall time covers the
// allocation work only, not scenario construction.
TrialResult run_trial_on(const Scenario& scenario, const SystemConfig& config,
                         std::uint64_t seed, Algorithm algorithm);

TrialResult run_trial(const SystemConfig& config, std::uint64_t seed, Algorithm algorithm);

struct TrialRow {
    Algorithm algorithm;
    double swept_value = 0.0;
    std::size_t trial = 0;
    TrialResult result;
    std::string config_hash;
};

struct SweepResult {
    std::string param;  // "none" when no parameter is swept
    std::vector<double> values;
    std::vector<Algorithm> algorithms;
    std::size_t n_trials = 0;
    std::vector<TrialRow> rows;  // value-major, then trial, then algorithm

    // Mean and sample stddev of a per-trial quantity for one cell.
    struct Stats {
        double mean = 0.0;
        double stddev = 0.0;
    };
    Stats stats(Algorithm alg, double value, double (*field)(const TrialResult&)) const;
};

// Trials use seeds base_seed + t; a given trial index sees the identical
// scenario for every algorithm and every swept value that leaves the
// topology parameters untouched.
SweepResult run_sweep(const SystemConfig& base, const std::string& param,
                      const std::vector<double>& values,
                      const std::vector<Algorithm>& algorithms, std::size_t n_trials,
                      std::uint64_t base_seed);

// Per-trial rows. With include_timing false the wall_time_s column is
// written as 0, making replayed output byte-identical.
void write_trials_csv(std::ostream& out, const SweepResult& sweep, bool include_timing);

// Per-(algorithm, value) aggregate rows.
void write_summary_csv(std::ostream& out, const SweepResult& sweep, bool include_timing);

}  // namespace d2d
