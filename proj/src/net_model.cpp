#include "d2d/net_model.hpp"

#include <cmath>
#include <string>

#include "d2d/errors.hpp"

namespace d2d {

namespace {

constexpr int kRetryCap = 10000;

Vec2 sample_disk(Rng& rng, double radius) {
    double r = radius * std::sqrt(rng.uniform());
    double theta = 2.0 * M_PI * rng.uniform();
    return {r * std::cos(theta), r * std::sin(theta)};
}

// Uniform over the annulus a <= r <= b centered at c.
Vec2 sample_annulus(Rng& rng, const Vec2& c, double a, double b) {
    double r = std::sqrt(a * a + (b * b - a * a) * rng.uniform());
    double theta = 2.0 * M_PI * rng.uniform();
    return {c.x + r * std::cos(theta), c.y + r * std::sin(theta)};
}

}  // namespace

double distance(const Vec2& a, const Vec2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

Topology generate_topology(const SystemConfig& config, Rng& rng) {
    Topology topo;
    topo.bs_position = {0.0, 0.0};

    std::vector<Vec2> placed{topo.bs_position};
    auto clear_of_others = [&](const Vec2& p) {
        for (const auto& q : placed)
            if (distance(p, q) < config.min_separation) return false;
        return true;
    };
    auto place = [&](auto&& sampler, const char* what) {
        for (int attempt = 0; attempt < kRetryCap; ++attempt) {
            Vec2 p = sampler();
            if (!clear_of_others(p)) continue;
            placed.push_back(p);
            return p;
        }
        throw DegenerateGeometryError(std::string("could not place ") + what +
                                      " within the retry cap; geometry too tight");
    };

    for (int i = 0; i < config.n_cellular; ++i)
        topo.cellular_positions.push_back(
            place([&] { return sample_disk(rng, config.cell_radius); }, "cellular user"));

    for (int i = 0; i < config.n_d2d; ++i)
        topo.d2d_tx_positions.push_back(
            place([&] { return sample_disk(rng, config.cell_radius); }, "D2D transmitter"));

    for (int i = 0; i < config.n_d2d; ++i) {
        const Vec2& tx = topo.d2d_tx_positions[static_cast<std::size_t>(i)];
        topo.d2d_rx_positions.push_back(place(
            [&] {
                // Resample until the receiver lands inside the cell.
                for (int attempt = 0; attempt < kRetryCap; ++attempt) {
                    Vec2 p = sample_annulus(rng, tx, config.d2d_dist_min, config.d2d_dist_max);
                    if (distance(p, topo.bs_position) <= config.cell_radius) return p;
                }
                throw DegenerateGeometryError(
                    "could not place a D2D receiver inside the cell within the retry cap");
            },
            "D2D receiver"));
    }
    return topo;
}

std::pair<LinkTable, FadingMatrix> build_links(const SystemConfig& config,
                                               const Topology& topology) {
    const std::size_t n_c = topology.cellular_positions.size();
    const std::size_t n_d = topology.d2d_tx_positions.size();
    const std::size_t n_links = 2 * n_c + n_d;

    LinkTable table;
    table.links.reserve(n_links);
    for (std::size_t i = 0; i < n_c; ++i)
        table.links.push_back({i, LinkKind::Uplink, topology.cellular_positions[i],
                               topology.bs_position, config.snr_cellular_max});
    for (std::size_t i = 0; i < n_c; ++i)
        table.links.push_back({n_c + i, LinkKind::Downlink, topology.bs_position,
                               topology.cellular_positions[i], config.snr_bs_max});
    for (std::size_t i = 0; i < n_d; ++i)
        table.links.push_back({2 * n_c + i, LinkKind::D2dDirect, topology.d2d_tx_positions[i],
                               topology.d2d_rx_positions[i], config.snr_d2d_max});

    for (const auto& link : table.links) {
        if (distance(link.tx, link.rx) == 0.0)
            throw DegenerateGeometryError("link " + std::to_string(link.index) +
                                          " has coincident transmitter and receiver");
    }

    auto gain = [&](const Vec2& a, const Vec2& b) {
        double d = std::max(distance(a, b), config.min_separation);
        return std::pow(d, -config.path_loss_exponent);
    };

    FadingMatrix fading;
    fading.zbar = Matrix(n_links, n_links);
    for (std::size_t i = 0; i < n_links; ++i)
        for (std::size_t j = 0; j < n_links; ++j)
            fading.zbar(i, j) = gain(table.links[i].tx, table.links[j].rx);

    table.two_hop.reserve(n_d);
    for (std::size_t i = 0; i < n_d; ++i)
        table.two_hop.push_back({gain(topology.d2d_tx_positions[i], topology.bs_position),
                                 gain(topology.bs_position, topology.d2d_rx_positions[i])});

    return {std::move(table), std::move(fading)};
}

}  // namespace d2d
