#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "d2d/baselines.hpp"
#include "d2d/rate_eval.hpp"
#include "oracles.hpp"

using namespace d2d;

namespace {

struct Synth {
    LinkTable links;
    FadingMatrix fading;
};

// n_cell cellular links then n_d2d direct links, unit caps, direct gains
// given per link, uniform cross gains.
Synth synth(std::size_t n_cell, std::size_t n_d2d, const std::vector<double>& direct,
            double cross) {
    Synth s;
    std::size_t n = n_cell + n_d2d;
    for (std::size_t i = 0; i < n; ++i) {
        Link l;
        l.index = i;
        l.kind = i < n_cell ? LinkKind::Uplink : LinkKind::D2dDirect;
        l.snr_max = 500.0;
        s.links.links.push_back(l);
    }
    s.links.two_hop.assign(n_d2d, TwoHopGains{1e-9, 1e-9});  // two-hop far weaker
    s.fading.zbar = Matrix(n, n, cross);
    for (std::size_t i = 0; i < n; ++i) s.fading.zbar(i, i) = direct[i];
    return s;
}

SystemConfig config_for(int n_c, int n_d, int n_ch) {
    SystemConfig cfg;
    cfg.n_cellular = n_c;
    cfg.n_d2d = n_d;
    cfg.n_channels = n_ch;
    cfg.solver.restarts = 1;
    return cfg;
}

}  // namespace

TEST_CASE("coalitional_game: scarce channels drive non-interfering links to merge") {
    // Two cellular links, two D2D links, three channels: only one D2D
    // coalition can be served alone. The D2D links do not interfere, so
    // pooling them in one coalition serves both and raises the total.
    SystemConfig cfg = config_for(1, 2, 3);
    auto s = synth(2, 2, {0.001, 0.001, 0.05, 0.03}, 1e-30);
    Rng rng(5);
    auto result = coalitional_game(s.links, s.fading, cfg, rng);

    CHECK(result.converged);
    CHECK(result.n_coalitions == 3);
    bool merged = false;
    for (const auto& c : result.coalitions)
        if (c == std::vector<std::size_t>{2, 3}) merged = true;
    CHECK(merged);
    CHECK(result.allocation.n_served == 4);
    CHECK(result.total_trace.size() >= 1);  // at least one accepted move
}

TEST_CASE("coalitional_game: mutually conflicting links stay singleton") {
    SystemConfig cfg = config_for(1, 3, 4);
    // cross gains equal to direct gains: ratio 1 < gamma_init everywhere
    auto s = synth(2, 3, {0.01, 0.01, 0.01, 0.01, 0.01}, 0.01);
    Rng rng(6);
    auto result = coalitional_game(s.links, s.fading, cfg, rng);
    CHECK(result.n_coalitions == 5);
    for (const auto& c : result.coalitions) CHECK(c.size() == 1);
    CHECK(result.total_trace.empty());
    CHECK(result.converged);
}

TEST_CASE("coalitional_game: total objective never decreases, coalitions stay feasible") {
    SystemConfig cfg = config_for(1, 3, 4);
    Rng topo_rng(11);
    auto [links, fading] = build_links(cfg, generate_topology(cfg, topo_rng));
    Rng rng(12);
    auto result = coalitional_game(links, fading, cfg, rng);

    double prev = result.initial_total;
    for (double total : result.total_trace) {
        CHECK(total > prev);  // strict improvement per accepted move
        prev = total;
    }
    for (const auto& c : result.coalitions) {
        int cellular = 0;
        for (std::size_t v : c) cellular += links.is_cellular(v) ? 1 : 0;
        CHECK(cellular <= 1);
        for (std::size_t a = 0; a < c.size(); ++a)
            for (std::size_t b = a + 1; b < c.size(); ++b)
                CHECK(pair_feasible(links, fading, c[a], c[b], cfg.gamma_init, cfg.gamma_init));
    }
    // coalition objectives reported alongside the final state
    CHECK(result.coalition_objectives.size() == result.n_coalitions);
    for (double v : result.coalition_objectives) CHECK(v >= 0.0);
}

TEST_CASE("coalitional_game: deterministic for a fixed seed") {
    SystemConfig cfg = config_for(1, 3, 4);
    Rng topo_rng(21);
    auto [links, fading] = build_links(cfg, generate_topology(cfg, topo_rng));
    Rng r1(9);
    Rng r2(9);
    auto a = coalitional_game(links, fading, cfg, r1);
    auto b = coalitional_game(links, fading, cfg, r2);
    CHECK(a.coalitions == b.coalitions);
    CHECK(a.allocation.sum_rate_bps == b.allocation.sum_rate_bps);
}

TEST_CASE("no_reuse_benchmark: budget equal to cellular demand serves no D2D") {
    SystemConfig cfg = config_for(2, 3, 4);  // N = 2*N_c
    Rng topo_rng(31);
    auto [links, fading] = build_links(cfg, generate_topology(cfg, topo_rng));
    auto alloc = no_reuse_benchmark(links, fading, cfg);
    CHECK(alloc.n_served == 4);
    for (std::size_t v : alloc.served_links) CHECK(links.is_cellular(v));
}

TEST_CASE("no_reuse_benchmark: serves all cellular plus the top-rate D2D links") {
    SystemConfig cfg;
    cfg.n_cellular = 10;
    cfg.n_d2d = 15;
    cfg.n_channels = 25;
    Rng topo_rng(32);
    auto [links, fading] = build_links(cfg, generate_topology(cfg, topo_rng));
    auto alloc = no_reuse_benchmark(links, fading, cfg);

    CHECK(alloc.n_served == 25);
    std::size_t d2d_served = 0;
    for (std::size_t v : alloc.served_links)
        if (!links.is_cellular(v)) ++d2d_served;
    CHECK(d2d_served == 5);  // 10 uplinks + 10 downlinks + 5 D2D links

    // re-sort oracle: the served D2D set is exactly the top 5 by
    // independently recomputed single-link mode rates
    std::vector<std::pair<double, std::size_t>> ranking;
    for (std::size_t v = 20; v < 35; ++v) {
        std::size_t pair = links.pair_of(v);
        auto d = select_mode(pair, links.two_hop[pair], fading.zbar(v, v), cfg);
        ranking.push_back({d.rate, v});
    }
    std::stable_sort(ranking.begin(), ranking.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t k = 0; k < 5; ++k) {
        std::size_t v = ranking[k].second;
        CHECK(std::find(alloc.served_links.begin(), alloc.served_links.end(), v) !=
              alloc.served_links.end());
    }

    double total = 0.0;
    for (std::size_t v : alloc.served_links) {
        if (links.is_cellular(v))
            total += single_link_rate(links.links[v].snr_max * fading.zbar(v, v),
                                      cfg.bandwidth_hz);
        else
            total += alloc.mode_decisions.at(links.pair_of(v)).rate;
    }
    CHECK(alloc.sum_rate_bps == doctest::Approx(total).epsilon(1e-12));
}
