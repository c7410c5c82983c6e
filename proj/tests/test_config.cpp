#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "d2d/config.hpp"
#include "d2d/errors.hpp"

using namespace d2d;

TEST_CASE("defaults match the reference experiment setup") {
    SystemConfig cfg;
    CHECK(cfg.n_channels == 25);
    CHECK(cfg.n_cellular == 10);
    CHECK(cfg.n_d2d == 15);
    CHECK(cfg.gamma_init == 250.0);
    CHECK(cfg.mu_coeff == 0.2);
    CHECK(cfg.path_loss_exponent == 4.0);
    // 26.99 dB and 27.78 dB as linear ratios
    CHECK(cfg.snr_cellular_max == doctest::Approx(500.0).epsilon(1e-3));
    CHECK(cfg.snr_d2d_max == doctest::Approx(500.0).epsilon(1e-3));
    CHECK(cfg.snr_bs_max == doctest::Approx(599.8).epsilon(1e-3));
    CHECK(cfg.n_links() == 35);
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("parse_config_text reads keys, comments and dB forms") {
    auto cfg = parse_config_text(R"(
# scenario
n_channels = 6
n_cellular = 2
n_d2d = 4          # inline comment
snr_bs_max_db = 30
assignment_objective = max_served_users
solver_restarts = 2
)");
    CHECK(cfg.n_channels == 6);
    CHECK(cfg.n_cellular == 2);
    CHECK(cfg.n_d2d == 4);
    CHECK(cfg.snr_bs_max == doctest::Approx(1000.0));
    CHECK(cfg.assignment_objective == AssignmentObjective::MaxServedUsers);
    CHECK(cfg.solver.restarts == 2);
    // untouched keys keep defaults
    CHECK(cfg.gamma_init == 250.0);
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse_config_text("nonsense_key = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("n_channels = abc\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("just a line\n"), ConfigError);
    // channel budget out of range: N < 2*N_c
    CHECK_THROWS_AS(parse_config_text("n_channels = 3\nn_cellular = 2\nn_d2d = 2\n"),
                    ConfigError);
    // N > 2*N_c + N_d
    CHECK_THROWS_AS(parse_config_text("n_channels = 9\nn_cellular = 2\nn_d2d = 2\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text("gamma_init = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("delta_gamma = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("d2d_dist_min = 0.5\nd2d_dist_max = 0.2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("assignment_objective = maximize_everything\n"),
                    ConfigError);
}

TEST_CASE("set_config_field drives sweepable parameters") {
    SystemConfig cfg;
    set_config_field(cfg, "delta_gamma", 1250.0);
    CHECK(cfg.delta_gamma == 1250.0);
    set_config_field(cfg, "n_d2d", 20.0);
    CHECK(cfg.n_d2d == 20);
    CHECK_THROWS_AS(set_config_field(cfg, "no_such_field", 1.0), ConfigError);
}

TEST_CASE("fingerprint is stable and sensitive") {
    SystemConfig a;
    SystemConfig b;
    CHECK(config_fingerprint(a) == config_fingerprint(b));
    CHECK(config_fingerprint(a).size() == 16);
    b.delta_gamma = 2500.0;
    CHECK(config_fingerprint(a) != config_fingerprint(b));
    // serialization round-trips through the parser
    auto c = parse_config_text(serialize_config(a));
    CHECK(config_fingerprint(c) == config_fingerprint(a));
}
