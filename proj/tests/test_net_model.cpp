#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "d2d/errors.hpp"
#include "d2d/net_model.hpp"

using namespace d2d;

namespace {

SystemConfig small_config() {
    SystemConfig cfg;
    cfg.n_cellular = 10;
    cfg.n_d2d = 15;
    cfg.n_channels = 25;
    return cfg;
}

}  // namespace

TEST_CASE("generate_topology: cardinality, containment, determinism") {
    SystemConfig cfg = small_config();
    Rng rng(42);
    Topology topo = generate_topology(cfg, rng);

    CHECK(topo.cellular_positions.size() == 10);
    CHECK(topo.d2d_tx_positions.size() == 15);
    CHECK(topo.d2d_rx_positions.size() == 15);
    for (const auto& p : topo.cellular_positions)
        CHECK(distance(p, topo.bs_position) <= cfg.cell_radius);
    for (const auto& p : topo.d2d_tx_positions)
        CHECK(distance(p, topo.bs_position) <= cfg.cell_radius);
    for (std::size_t i = 0; i < 15; ++i) {
        CHECK(distance(topo.d2d_rx_positions[i], topo.bs_position) <= cfg.cell_radius);
        double d = distance(topo.d2d_tx_positions[i], topo.d2d_rx_positions[i]);
        CHECK(d >= cfg.d2d_dist_min);
        CHECK(d <= cfg.d2d_dist_max);
    }

    Rng rng2(42);
    Topology again = generate_topology(cfg, rng2);
    CHECK(again.cellular_positions == topo.cellular_positions);
    CHECK(again.d2d_tx_positions == topo.d2d_tx_positions);
    CHECK(again.d2d_rx_positions == topo.d2d_rx_positions);
}

TEST_CASE("generate_topology: degenerate distance range pins every pair distance") {
    SystemConfig cfg = small_config();
    cfg.d2d_dist_min = cfg.d2d_dist_max = 0.37;
    Rng rng(7);
    Topology topo = generate_topology(cfg, rng);
    for (std::size_t i = 0; i < topo.d2d_tx_positions.size(); ++i)
        CHECK(distance(topo.d2d_tx_positions[i], topo.d2d_rx_positions[i]) ==
              doctest::Approx(0.37).epsilon(1e-12));
}

TEST_CASE("generate_topology: impossible separation hits the retry cap") {
    SystemConfig cfg = small_config();
    // pair separation below the global minimum separation
    cfg.d2d_dist_min = cfg.min_separation / 4.0;
    cfg.d2d_dist_max = cfg.min_separation / 2.0;
    Rng rng(3);
    CHECK_THROWS_AS(generate_topology(cfg, rng), DegenerateGeometryError);
}

TEST_CASE("build_links: enumeration convention and SNR caps") {
    SystemConfig cfg = small_config();
    Rng rng(11);
    Topology topo = generate_topology(cfg, rng);
    auto [links, fading] = build_links(cfg, topo);

    REQUIRE(links.size() == 35);
    CHECK(links.n_cellular_links() == 20);
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(links.links[i].kind == LinkKind::Uplink);
        CHECK(links.links[i].rx == topo.bs_position);  // uplink receiver is the BS
        CHECK(links.links[i].tx == topo.cellular_positions[i]);
        CHECK(links.links[i].snr_max == cfg.snr_cellular_max);
    }
    for (std::size_t i = 10; i < 20; ++i) {
        CHECK(links.links[i].kind == LinkKind::Downlink);
        CHECK(links.links[i].tx == topo.bs_position);  // downlink transmitter is the BS
        CHECK(links.links[i].rx == topo.cellular_positions[i - 10]);
        CHECK(links.links[i].snr_max == cfg.snr_bs_max);
    }
    for (std::size_t i = 20; i < 35; ++i) {
        CHECK(links.links[i].kind == LinkKind::D2dDirect);
        CHECK(links.links[i].snr_max == cfg.snr_d2d_max);
        CHECK(links.pair_of(i) == i - 20);
    }
    CHECK(fading.zbar.rows() == 35);
    CHECK(fading.zbar.cols() == 35);
    for (std::size_t i = 0; i < 35; ++i)
        for (std::size_t j = 0; j < 35; ++j) {
            CHECK(fading.zbar(i, j) > 0.0);
            CHECK(std::isfinite(fading.zbar(i, j)));
        }
}

TEST_CASE("build_links: hand-computed gains on a 3-link layout") {
    SystemConfig cfg;
    cfg.n_cellular = 1;
    cfg.n_d2d = 1;
    cfg.n_channels = 2;

    Topology topo;
    topo.bs_position = {0.0, 0.0};
    topo.cellular_positions = {{3.0, 4.0}};   // 5 units from the BS
    topo.d2d_tx_positions = {{1.0, 0.0}};     // 1 unit from the BS
    topo.d2d_rx_positions = {{1.0, 0.3}};     // 0.3 from its transmitter

    auto [links, fading] = build_links(cfg, topo);
    REQUIRE(links.size() == 3);

    auto g = [&](double d) { return std::pow(std::max(d, cfg.min_separation), -4.0); };
    const double d_cu_dr = std::hypot(3.0 - 1.0, 4.0 - 0.3);
    const double d_bs_dr = std::hypot(1.0, 0.3);
    const double d_dt_cu = std::hypot(1.0 - 3.0, 0.0 - 4.0);

    // row 0: uplink tx = CU
    CHECK(fading.zbar(0, 0) == doctest::Approx(g(5.0)).epsilon(1e-12));
    CHECK(fading.zbar(0, 1) == doctest::Approx(g(0.0)).epsilon(1e-12));  // same node, floored
    CHECK(fading.zbar(0, 2) == doctest::Approx(g(d_cu_dr)).epsilon(1e-12));
    // row 1: downlink tx = BS
    CHECK(fading.zbar(1, 0) == doctest::Approx(g(0.0)).epsilon(1e-12));
    CHECK(fading.zbar(1, 1) == doctest::Approx(g(5.0)).epsilon(1e-12));
    CHECK(fading.zbar(1, 2) == doctest::Approx(g(d_bs_dr)).epsilon(1e-12));
    // row 2: D2D tx
    CHECK(fading.zbar(2, 0) == doctest::Approx(g(1.0)).epsilon(1e-12));
    CHECK(fading.zbar(2, 1) == doctest::Approx(g(d_dt_cu)).epsilon(1e-12));
    CHECK(fading.zbar(2, 2) == doctest::Approx(g(0.3)).epsilon(1e-12));

    // a node 10 units from a receiver contributes 1e-4
    CHECK(g(10.0) == doctest::Approx(1e-4).epsilon(1e-12));

    REQUIRE(links.two_hop.size() == 1);
    CHECK(links.two_hop[0].tx_to_bs == doctest::Approx(g(1.0)).epsilon(1e-12));
    CHECK(links.two_hop[0].bs_to_rx == doctest::Approx(g(d_bs_dr)).epsilon(1e-12));
}

TEST_CASE("build_links: coincident link endpoints are rejected") {
    SystemConfig cfg;
    cfg.n_cellular = 1;
    cfg.n_d2d = 1;
    cfg.n_channels = 2;
    Topology topo;
    topo.bs_position = {0.0, 0.0};
    topo.cellular_positions = {{1.0, 1.0}};
    topo.d2d_tx_positions = {{2.0, 0.0}};
    topo.d2d_rx_positions = {{2.0, 0.0}};  // zero-length link
    CHECK_THROWS_AS(build_links(cfg, topo), DegenerateGeometryError);
}

TEST_CASE("same seed regenerates bit-identical links and gains") {
    SystemConfig cfg = small_config();
    Rng r1(99);
    Rng r2(99);
    auto [links1, fading1] = build_links(cfg, generate_topology(cfg, r1));
    auto [links2, fading2] = build_links(cfg, generate_topology(cfg, r2));
    CHECK(fading1.zbar == fading2.zbar);
    REQUIRE(links1.size() == links2.size());
    for (std::size_t i = 0; i < links1.size(); ++i) {
        CHECK(links1.links[i].tx == links2.links[i].tx);
        CHECK(links1.links[i].rx == links2.links[i].rx);
        CHECK(links1.links[i].snr_max == links2.links[i].snr_max);
    }
}
