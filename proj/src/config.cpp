#include "d2d/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "d2d/errors.hpp"

namespace d2d {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse number '" + value + "'");
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    double v = parse_double(key, value);
    long long i = static_cast<long long>(v);
    if (static_cast<double>(i) != v)
        throw ConfigError("config key '" + key + "': expected an integer, got '" + value + "'");
    return i;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Shortest round-trip representation; stable across runs.
std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// One table drives parsing, sweeps, and serialization.
struct FieldDef {
    const char* key;
    std::function<double(const SystemConfig&)> get;
    std::function<void(SystemConfig&, double)> set;
    bool integral;
};

const std::vector<FieldDef>& numeric_fields() {
    static const std::vector<FieldDef> fields = {
        {"n_channels", [](const SystemConfig& c) { return double(c.n_channels); },
         [](SystemConfig& c, double v) { c.n_channels = int(v); }, true},
        {"n_cellular", [](const SystemConfig& c) { return double(c.n_cellular); },
         [](SystemConfig& c, double v) { c.n_cellular = int(v); }, true},
        {"n_d2d", [](const SystemConfig& c) { return double(c.n_d2d); },
         [](SystemConfig& c, double v) { c.n_d2d = int(v); }, true},
        {"bandwidth_hz", [](const SystemConfig& c) { return c.bandwidth_hz; },
         [](SystemConfig& c, double v) { c.bandwidth_hz = v; }, false},
        {"snr_cellular_max", [](const SystemConfig& c) { return c.snr_cellular_max; },
         [](SystemConfig& c, double v) { c.snr_cellular_max = v; }, false},
        {"snr_d2d_max", [](const SystemConfig& c) { return c.snr_d2d_max; },
         [](SystemConfig& c, double v) { c.snr_d2d_max = v; }, false},
        {"snr_bs_max", [](const SystemConfig& c) { return c.snr_bs_max; },
         [](SystemConfig& c, double v) { c.snr_bs_max = v; }, false},
        {"gamma_init", [](const SystemConfig& c) { return c.gamma_init; },
         [](SystemConfig& c, double v) { c.gamma_init = v; }, false},
        {"delta_gamma", [](const SystemConfig& c) { return c.delta_gamma; },
         [](SystemConfig& c, double v) { c.delta_gamma = v; }, false},
        {"mu_coeff", [](const SystemConfig& c) { return c.mu_coeff; },
         [](SystemConfig& c, double v) { c.mu_coeff = v; }, false},
        {"path_loss_exponent", [](const SystemConfig& c) { return c.path_loss_exponent; },
         [](SystemConfig& c, double v) { c.path_loss_exponent = v; }, false},
        {"cell_radius", [](const SystemConfig& c) { return c.cell_radius; },
         [](SystemConfig& c, double v) { c.cell_radius = v; }, false},
        {"d2d_dist_min", [](const SystemConfig& c) { return c.d2d_dist_min; },
         [](SystemConfig& c, double v) { c.d2d_dist_min = v; }, false},
        {"d2d_dist_max", [](const SystemConfig& c) { return c.d2d_dist_max; },
         [](SystemConfig& c, double v) { c.d2d_dist_max = v; }, false},
        {"min_separation", [](const SystemConfig& c) { return c.min_separation; },
         [](SystemConfig& c, double v) { c.min_separation = v; }, false},
        {"rng_seed", [](const SystemConfig& c) { return double(c.rng_seed); },
         [](SystemConfig& c, double v) { c.rng_seed = std::uint64_t(v); }, true},
        {"solver_restarts", [](const SystemConfig& c) { return double(c.solver.restarts); },
         [](SystemConfig& c, double v) { c.solver.restarts = int(v); }, true},
        {"solver_barrier_init", [](const SystemConfig& c) { return c.solver.barrier_init; },
         [](SystemConfig& c, double v) { c.solver.barrier_init = v; }, false},
        {"solver_barrier_shrink", [](const SystemConfig& c) { return c.solver.barrier_shrink; },
         [](SystemConfig& c, double v) { c.solver.barrier_shrink = v; }, false},
        {"solver_barrier_rounds", [](const SystemConfig& c) { return double(c.solver.barrier_rounds); },
         [](SystemConfig& c, double v) { c.solver.barrier_rounds = int(v); }, true},
        {"solver_tolerance", [](const SystemConfig& c) { return c.solver.tolerance; },
         [](SystemConfig& c, double v) { c.solver.tolerance = v; }, false},
        {"solver_fd_step", [](const SystemConfig& c) { return c.solver.fd_step; },
         [](SystemConfig& c, double v) { c.solver.fd_step = v; }, false},
        {"solver_max_inner_iters", [](const SystemConfig& c) { return double(c.solver.max_inner_iters); },
         [](SystemConfig& c, double v) { c.solver.max_inner_iters = int(v); }, true},
    };
    return fields;
}

}  // namespace

void SystemConfig::validate() const {
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    if (n_cellular < 0 || n_d2d < 0) fail("user counts must be nonnegative");
    if (n_channels < 2 * n_cellular || n_channels > 2 * n_cellular + n_d2d)
        fail("channel budget must satisfy 2*n_cellular <= n_channels <= 2*n_cellular + n_d2d");
    if (n_links() == 0) fail("empty scenario: no links");
    if (bandwidth_hz <= 0) fail("bandwidth_hz must be positive");
    if (snr_cellular_max <= 0 || snr_d2d_max <= 0 || snr_bs_max <= 0)
        fail("SNR caps must be positive");
    if (gamma_init <= 0) fail("gamma_init must be positive");
    if (delta_gamma < 0) fail("delta_gamma must be nonnegative");
    if (mu_coeff < 0) fail("mu_coeff must be nonnegative");
    if (path_loss_exponent <= 0) fail("path_loss_exponent must be positive");
    if (cell_radius <= 0) fail("cell_radius must be positive");
    if (d2d_dist_min <= 0 || d2d_dist_max < d2d_dist_min)
        fail("d2d distance range must satisfy 0 < d2d_dist_min <= d2d_dist_max");
    if (d2d_dist_max > 2 * cell_radius) fail("d2d_dist_max exceeds the cell diameter");
    if (min_separation <= 0) fail("min_separation must be positive");
    if (solver.restarts < 0) fail("solver_restarts must be nonnegative");
    if (solver.barrier_init <= 0 || solver.barrier_shrink <= 0 || solver.barrier_shrink >= 1)
        fail("barrier schedule must have barrier_init > 0 and 0 < barrier_shrink < 1");
    if (solver.barrier_rounds < 1) fail("solver_barrier_rounds must be >= 1");
    if (solver.tolerance <= 0) fail("solver_tolerance must be positive");
    if (solver.fd_step <= 0) fail("solver_fd_step must be positive");
    if (solver.max_inner_iters < 1) fail("solver_max_inner_iters must be >= 1");
}

SystemConfig parse_config_text(const std::string& text) {
    SystemConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));

        if (key == "assignment_objective") {
            if (value == "max_sum_rate")
                cfg.assignment_objective = AssignmentObjective::MaxSumRate;
            else if (value == "max_served_users")
                cfg.assignment_objective = AssignmentObjective::MaxServedUsers;
            else
                throw ConfigError("assignment_objective must be max_sum_rate or max_served_users");
            continue;
        }
        // dB convenience keys, converted once here.
        if (key == "snr_cellular_max_db") {
            cfg.snr_cellular_max = db_to_linear(parse_double(key, value));
            continue;
        }
        if (key == "snr_d2d_max_db") {
            cfg.snr_d2d_max = db_to_linear(parse_double(key, value));
            continue;
        }
        if (key == "snr_bs_max_db") {
            cfg.snr_bs_max = db_to_linear(parse_double(key, value));
            continue;
        }

        bool matched = false;
        for (const auto& f : numeric_fields()) {
            if (key == f.key) {
                f.set(cfg, f.integral ? double(parse_int(key, value)) : parse_double(key, value));
                matched = true;
                break;
            }
        }
        if (!matched) throw ConfigError("unknown config key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

SystemConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void set_config_field(SystemConfig& cfg, const std::string& key, double value) {
    for (const auto& f : numeric_fields()) {
        if (key == f.key) {
            f.set(cfg, value);
            return;
        }
    }
    throw ConfigError("unknown or non-numeric sweep parameter '" + key + "'");
}

std::string serialize_config(const SystemConfig& cfg) {
    std::map<std::string, std::string> kv;
    for (const auto& f : numeric_fields()) kv[f.key] = format_double(f.get(cfg));
    kv["assignment_objective"] = to_string(cfg.assignment_objective);
    std::string out;
    for (const auto& [k, v] : kv) {
        out += k;
        out += '=';
        out += v;
        out += '\n';
    }
    return out;
}

std::string config_fingerprint(const SystemConfig& cfg) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : serialize_config(cfg)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string to_string(AssignmentObjective obj) {
    return obj == AssignmentObjective::MaxSumRate ? "max_sum_rate" : "max_served_users";
}

}  // namespace d2d
