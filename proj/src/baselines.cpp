#include "d2d/baselines.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "d2d/rate_eval.hpp"

namespace d2d {

namespace {
constexpr int kPassCap = 20;
}  // namespace

CoalitionGameResult coalitional_game(const LinkTable& links, const FadingMatrix& fading,
                                     const SystemConfig& config, Rng& rng) {
    const std::size_t n = links.size();
    std::uint64_t value_seed = rng.next_u64();

    // Coalition value cache, keyed by member set so the value is a
    // function of the set alone, not of move history.
    std::map<std::vector<std::size_t>, GroupSolution> cache;
    bool solver_ok = true;
    auto solve = [&](const std::vector<std::size_t>& members) -> const GroupSolution& {
        auto it = cache.find(members);
        if (it == cache.end()) {
            PowerProblem problem = make_group_problem(members, links, fading, config);
            Rng local(mix_seed(value_seed, member_set_hash(members)));
            it = cache.emplace(members, optimize_group(problem, 1, local, config.solver)).first;
            if (!it->second.converged) solver_ok = false;
        }
        return it->second;
    };
    auto value = [&](const std::vector<std::size_t>& members) {
        return members.empty() ? 0.0 : solve(members).objective;
    };

    std::vector<std::vector<std::size_t>> coalitions(n);
    std::vector<std::size_t> coalition_of(n);
    for (std::size_t i = 0; i < n; ++i) {
        coalitions[i] = {i};
        coalition_of[i] = i;
    }

    // Game total: what the channel budget can serve. Cellular-containing
    // coalitions always hold a channel; the best of the rest fill the
    // leftover budget. Summing over all coalitions instead would make
    // all-singletons optimal outright and the game would never move.
    const std::size_t d2d_budget =
        static_cast<std::size_t>(config.n_channels) - links.n_cellular_links();
    auto total_of = [&](const std::vector<std::vector<std::size_t>>& cs) {
        double total = 0.0;
        std::vector<double> d2d_values;
        for (const auto& c : cs) {
            if (c.empty()) continue;
            bool has_cellular = links.is_cellular(c.front());  // members sorted
            double v = value(c);
            if (has_cellular)
                total += v;
            else
                d2d_values.push_back(v);
        }
        std::sort(d2d_values.begin(), d2d_values.end(), std::greater<>());
        for (std::size_t k = 0; k < std::min(d2d_budget, d2d_values.size()); ++k)
            total += d2d_values[k];
        return total;
    };

    auto erase_member = [](std::vector<std::size_t>& v, std::size_t x) {
        v.erase(std::find(v.begin(), v.end(), x));
    };
    auto insert_member = [](std::vector<std::size_t>& v, std::size_t x) {
        v.insert(std::upper_bound(v.begin(), v.end(), x), x);
    };

    double total = total_of(coalitions);
    const double initial_total = total;
    std::vector<double> total_trace;

    bool converged = false;
    for (int pass = 0; pass < kPassCap && !converged; ++pass) {
        bool changed = false;
        for (std::size_t i : rng.permutation(n)) {
            std::size_t src = coalition_of[i];
            for (std::size_t tgt = 0; tgt < coalitions.size(); ++tgt) {
                if (tgt == src) continue;
                bool feasible = std::all_of(
                    coalitions[tgt].begin(), coalitions[tgt].end(), [&](std::size_t k) {
                        return pair_feasible(links, fading, i, k, config.gamma_init,
                                             config.gamma_init);
                    });
                if (!feasible) continue;

                std::vector<std::vector<std::size_t>> candidate = coalitions;
                erase_member(candidate[src], i);
                insert_member(candidate[tgt], i);
                double candidate_total = total_of(candidate);
                if (candidate_total > total) {
                    coalition_of[i] = tgt;
                    if (candidate[src].empty()) {
                        candidate.erase(candidate.begin() + static_cast<std::ptrdiff_t>(src));
                        for (std::size_t& c : coalition_of)
                            if (c > src) --c;
                    }
                    coalitions = std::move(candidate);
                    total = candidate_total;
                    total_trace.push_back(total);
                    changed = true;
                    break;
                }
            }
        }
        converged = !changed;
    }

    std::map<std::size_t, ModeDecision> decisions;
    for (const auto& c : coalitions) {
        if (c.size() == 1 && !links.is_cellular(c[0])) {
            std::size_t pair = links.pair_of(c[0]);
            decisions[pair] =
                select_mode(pair, links.two_hop[pair], fading.zbar(c[0], c[0]), config);
        }
    }

    Partition partition;
    partition.groups = coalitions;
    std::vector<GroupSolution> solutions;
    solutions.reserve(coalitions.size());
    for (const auto& c : coalitions) solutions.push_back(solve(c));

    CoalitionGameResult result;
    result.allocation = assign_channels(partition, solutions, decisions, links, config);
    result.n_coalitions = coalitions.size();
    result.converged = converged;
    result.solver_converged = solver_ok;
    result.coalitions = std::move(coalitions);
    for (const auto& c : result.coalitions)
        result.coalition_objectives.push_back(solve(c).objective);
    result.total_trace = std::move(total_trace);
    result.initial_total = initial_total;
    return result;
}

Allocation no_reuse_benchmark(const LinkTable& links, const FadingMatrix& fading,
                              const SystemConfig& config) {
    const std::size_t n = links.size();
    const std::size_t n_cell = links.n_cellular_links();
    const std::size_t budget = static_cast<std::size_t>(config.n_channels);

    std::map<std::size_t, ModeDecision> decisions;
    std::vector<double> rate(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (links.is_cellular(i)) {
            rate[i] = single_link_rate(links.links[i].snr_max * fading.zbar(i, i),
                                       config.bandwidth_hz);
        } else {
            std::size_t pair = links.pair_of(i);
            decisions[pair] =
                select_mode(pair, links.two_hop[pair], fading.zbar(i, i), config);
            rate[i] = decisions[pair].rate;
        }
    }

    // Cellular links are always in; the leftover budget goes to the
    // fastest D2D links.
    std::vector<std::size_t> d2d(n - n_cell);
    std::iota(d2d.begin(), d2d.end(), n_cell);
    std::stable_sort(d2d.begin(), d2d.end(),
                     [&](std::size_t a, std::size_t b) { return rate[a] > rate[b]; });
    d2d.resize(budget - n_cell);

    Allocation alloc;
    alloc.channel_to_group.assign(budget, -1);
    std::size_t channel = 0;
    auto serve = [&](std::size_t link) {
        alloc.channel_to_group[channel++] = static_cast<int>(link);
        alloc.served_links.push_back(link);
        alloc.sum_rate_bps += rate[link];
    };
    for (std::size_t i = 0; i < n_cell; ++i) serve(i);
    for (std::size_t i : d2d) serve(i);

    std::sort(alloc.served_links.begin(), alloc.served_links.end());
    alloc.n_served = alloc.served_links.size();
    alloc.mode_decisions = std::move(decisions);
    return alloc;
}

}  // namespace d2d
