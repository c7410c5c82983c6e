#include "d2d/mode_channel.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "d2d/errors.hpp"
#include "d2d/rate_eval.hpp"

namespace d2d {

ModeDecision select_mode(std::size_t pair_index, const TwoHopGains& two_hop,
                         double direct_gain, const SystemConfig& config) {
    const double B = config.bandwidth_hz;
    double rate_tx_bs = single_link_rate(config.snr_d2d_max * two_hop.tx_to_bs, B);
    double rate_bs_rx = single_link_rate(config.snr_bs_max * two_hop.bs_to_rx, B);
    double tau = rate_bs_rx / (rate_tx_bs + rate_bs_rx);
    double cellular_rate = rate_tx_bs * rate_bs_rx / (rate_tx_bs + rate_bs_rx);
    double direct_rate = single_link_rate(config.snr_d2d_max * direct_gain, B);

    ModeDecision d;
    d.pair_index = pair_index;
    d.tau_star = tau;
    if (cellular_rate > direct_rate) {
        d.mode = D2dMode::Cellular;
        d.rate = cellular_rate;
    } else {
        d.mode = D2dMode::Direct;
        d.rate = direct_rate;
    }
    return d;
}

Allocation assign_channels(const Partition& partition,
                           const std::vector<GroupSolution>& solutions,
                           const std::map<std::size_t, ModeDecision>& decisions,
                           const LinkTable& links, const SystemConfig& config) {
    const std::size_t n_groups = partition.n_groups();
    const std::size_t n_cellular_groups_expected =
        static_cast<std::size_t>(2 * config.n_cellular);

    // A singleton D2D group is valued at its mode decision's rate; every
    // other group at the optimized sum of member rates.
    auto group_rate = [&](std::size_t g) {
        const auto& members = partition.groups[g];
        if (members.size() == 1 && !links.is_cellular(members[0])) {
            auto it = decisions.find(links.pair_of(members[0]));
            if (it != decisions.end()) return it->second.rate;
        }
        return solutions[g].sum_rate;
    };

    std::vector<std::size_t> cellular_groups;
    std::vector<std::size_t> d2d_groups;
    for (std::size_t g = 0; g < n_groups; ++g) {
        bool has_cellular = std::any_of(partition.groups[g].begin(), partition.groups[g].end(),
                                        [&](std::size_t v) { return links.is_cellular(v); });
        (has_cellular ? cellular_groups : d2d_groups).push_back(g);
    }
    if (cellular_groups.size() < n_cellular_groups_expected)
        throw InternalConsistencyError(
            "partition holds " + std::to_string(cellular_groups.size()) +
            " cellular-containing groups, expected " + std::to_string(n_cellular_groups_expected));

    const std::size_t budget = static_cast<std::size_t>(config.n_channels);
    std::size_t d2d_budget = budget - cellular_groups.size();

    if (config.assignment_objective == AssignmentObjective::MaxSumRate) {
        std::stable_sort(d2d_groups.begin(), d2d_groups.end(), [&](std::size_t a, std::size_t b) {
            return group_rate(a) > group_rate(b);
        });
    } else {
        std::stable_sort(d2d_groups.begin(), d2d_groups.end(), [&](std::size_t a, std::size_t b) {
            return partition.groups[a].size() > partition.groups[b].size();
        });
    }
    if (d2d_groups.size() > d2d_budget) d2d_groups.resize(d2d_budget);

    Allocation alloc;
    alloc.channel_to_group.assign(budget, -1);
    std::size_t channel = 0;
    auto serve = [&](std::size_t g) {
        alloc.channel_to_group[channel++] = static_cast<int>(g);
        for (std::size_t v : partition.groups[g]) alloc.served_links.push_back(v);
        alloc.sum_rate_bps += group_rate(g);
    };
    for (std::size_t g : cellular_groups) serve(g);
    for (std::size_t g : d2d_groups) serve(g);

    std::sort(alloc.served_links.begin(), alloc.served_links.end());
    alloc.n_served = alloc.served_links.size();
    alloc.mode_decisions = decisions;
    return alloc;
}

}  // namespace d2d
