// Cellular-vs-direct mode selection for lone D2D pairs and the final
// channel-to-group assignment.
#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "d2d/config.hpp"
#include "d2d/net_model.hpp"
#include "d2d/partition.hpp"
#include "d2d/power_opt.hpp"

namespace d2d {

enum class D2dMode { Direct, Cellular };

struct ModeDecision {
    std::size_t pair_index = 0;  // D2D pair id
    D2dMode mode = D2dMode::Direct;
    double tau_star = 0.0;  // first-hop time fraction; meaningful in cellular mode
    double rate = 0.0;      // bits/s of the chosen mode
};

struct Allocation {
    // channel_to_group[c] = group id served on channel c, or -1 if idle.
    std::vector<int> channel_to_group;
    std::vector<std::size_t> served_links;
    std::map<std::size_t, ModeDecision> mode_decisions;  // by pair id
    double sum_rate_bps = 0.0;
    std::size_t n_served = 0;
};

// Rate of the two-hop path at the optimal time split against the direct
// path at full power; picks the larger (ties go direct).
ModeDecision select_mode(std::size_t pair_index, const TwoHopGains& two_hop,
                         double direct_gain, const SystemConfig& config);

// One channel per cellular-containing group first; the remaining budget
// goes to the top non-cellular groups ranked by group sum rate or group
// size per the configured objective (ties to the lower group id).
// Singleton D2D groups contribute their mode decision's rate.
Allocation assign_channels(const Partition& partition,
                           const std::vector<GroupSolution>& solutions,
                           const std::map<std::size_t, ModeDecision>& decisions,
                           const LinkTable& links, const SystemConfig& config);

}  // namespace d2d
