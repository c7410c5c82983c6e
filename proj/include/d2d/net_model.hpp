// Topology generation, link enumeration, and the expected-gain matrix.
#pragma once

#include <cstddef>
#include <vector>

#include "d2d/config.hpp"
#include "d2d/matrix.hpp"
#include "d2d/rng.hpp"

namespace d2d {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Vec2&) const = default;
};

double distance(const Vec2& a, const Vec2& b);

// Base station at the origin, users scattered in the cell disk.
struct Topology {
    Vec2 bs_position;
    std::vector<Vec2> cellular_positions;
    std::vector<Vec2> d2d_tx_positions;
    std::vector<Vec2> d2d_rx_positions;
};

// Link index convention: uplinks come first (one per cellular user), then
// downlinks, then D2D direct links.
enum class LinkKind { Uplink, Downlink, D2dDirect };

struct Link {
    std::size_t index = 0;
    LinkKind kind = LinkKind::Uplink;
    Vec2 tx;
    Vec2 rx;
    double snr_max = 0.0;  // linear cap for this link's transmitter
};

// Expected gains of the two hops a D2D pair would use in cellular mode.
struct TwoHopGains {
    double tx_to_bs = 0.0;
    double bs_to_rx = 0.0;
};

struct LinkTable {
    std::vector<Link> links;
    std::vector<TwoHopGains> two_hop;  // one per D2D pair

    std::size_t size() const { return links.size(); }
    std::size_t n_cellular_links() const { return links.size() - two_hop.size(); }
    bool is_cellular(std::size_t i) const { return i < n_cellular_links(); }
    // For a D2D direct link index, the pair id it belongs to.
    std::size_t pair_of(std::size_t i) const { return i - n_cellular_links(); }
};

// zbar(i, j) = expected gain between the transmitter of link i and the
// receiver of link j. Distances are floored at min_separation before the
// d^-alpha law so every entry stays finite; the floor also covers the one
// structurally coincident pair (a user's uplink tx is its downlink rx).
struct FadingMatrix {
    Matrix zbar;
    bool operator==(const FadingMatrix&) const = default;
};

// Samples user positions: cellular users and D2D transmitters uniform in
// the cell disk, each D2D receiver uniform in the [d2d_dist_min,
// d2d_dist_max] annulus around its transmitter, resampled until it falls
// inside the cell. All distinct nodes are rejection-sampled to keep
// min_separation apart; exceeding the retry cap raises
// DegenerateGeometryError. Deterministic given the rng state.
Topology generate_topology(const SystemConfig& config, Rng& rng);

// Enumerates links in the index convention above and fills the gain
// matrix plus per-pair two-hop gains. Raises DegenerateGeometryError if
// any link has coincident endpoints.
std::pair<LinkTable, FadingMatrix> build_links(const SystemConfig& config,
                                               const Topology& topology);

}  // namespace d2d
