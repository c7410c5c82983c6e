// Scenario configuration: every constant the simulator consumes, with
// defaults matching the reference experiment setup.
#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace d2d {

enum class AssignmentObjective { MaxSumRate, MaxServedUsers };

struct SolverParams {
    int restarts = 5;              // random interior starts (the full-power start is always added)
    double barrier_init = 1.0;     // initial barrier multiplier
    double barrier_shrink = 0.1;   // multiplier decay per outer round
    int barrier_rounds = 6;        // outer rounds
    double tolerance = 1e-6;       // relative objective change across outer rounds
    double fd_step = 1e-4;         // central-difference step, relative to each box width
    int max_inner_iters = 200;     // gradient-ascent iterations per outer round
};

struct SystemConfig {
    // Channel budget and population.
    int n_channels = 25;   // N orthogonal channels
    int n_cellular = 10;   // N_c cellular users (one uplink + one downlink each)
    int n_d2d = 15;        // N_d D2D pairs

    double bandwidth_hz = 1e6;  // B, per channel

    // Max transmit SNRs, linear. Defaults are 26.99 dB (cellular user and
    // D2D transmitter) and 27.78 dB (base station per channel).
    double snr_cellular_max = std::pow(10.0, 26.99 / 10.0);  // ~500.0
    double snr_d2d_max = std::pow(10.0, 26.99 / 10.0);       // ~500.0
    double snr_bs_max = std::pow(10.0, 27.78 / 10.0);        // ~599.8

    // Interference-threshold schedule for the conflict graph.
    double gamma_init = 250.0;
    double delta_gamma = 250.0;

    // Min-rate weight: mu = mu_coeff * group size.
    double mu_coeff = 0.2;

    double path_loss_exponent = 4.0;

    // Placement geometry. Distances are in units of 100 m: a 5.0 cell
    // radius is a 500 m cell, D2D pairs sit 10..50 m apart. The d^-4 gain
    // law evaluated on these numbers keeps the links inside the dynamic
    // range where interference actually competes with noise.
    double cell_radius = 5.0;
    double d2d_dist_min = 0.1;
    double d2d_dist_max = 0.5;
    double min_separation = 0.01;  // distance floor between any tx/rx pair

    AssignmentObjective assignment_objective = AssignmentObjective::MaxSumRate;

    std::uint64_t rng_seed = 1;

    SolverParams solver;

    // Throws ConfigError if any invariant fails.
    void validate() const;

    int n_links() const { return 2 * n_cellular + n_d2d; }
};

// Flat key=value config file. Unknown keys and malformed values raise
// ConfigError. Every key is optional; omitted keys keep their defaults.
SystemConfig parse_config_file(const std::string& path);
SystemConfig parse_config_text(const std::string& text);

// Set one numeric field by its config-file key (used by parameter sweeps).
void set_config_field(SystemConfig& cfg, const std::string& key, double value);

// Canonical key=value serialization (sorted keys, shortest round-trip doubles).
std::string serialize_config(const SystemConfig& cfg);

// FNV-1a over the canonical serialization, as 16 hex digits.
std::string config_fingerprint(const SystemConfig& cfg);

std::string to_string(AssignmentObjective obj);

}  // namespace d2d
