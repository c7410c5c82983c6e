// Per-group transmit-power optimization: sum ergodic rate plus a
// weighted minimum-rate term, solved in epigraph form with a multi-start
// log-barrier method.
#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "d2d/config.hpp"
#include "d2d/matrix.hpp"
#include "d2d/net_model.hpp"
#include "d2d/rng.hpp"

namespace d2d {

struct PowerProblem {
    std::vector<std::size_t> members;  // link indices, for bookkeeping
    std::vector<double> p_max;         // per-member cap, linear SNR
    Matrix gains;                      // gains(k, j) between members k and j
    double mu = 0.0;                   // min-rate weight (mu_coeff * group size)
    double bandwidth = 1.0;

    std::size_t size() const { return p_max.size(); }
};

struct GroupSolution {
    std::vector<double> powers;  // linear SNR, inside [0, p_max]
    std::vector<double> rates;   // bits/s per member
    double sum_rate = 0.0;
    double min_rate = 0.0;
    double objective = 0.0;      // sum_rate + mu * min_rate
    double epigraph_r = 0.0;
    bool converged = true;
};

// Problem for one channel-sharing group of links, with the min-rate
// weight scaled by group size.
PowerProblem make_group_problem(const std::vector<std::size_t>& members, const LinkTable& links,
                                const FadingMatrix& fading, const SystemConfig& config);

// Stable value usable as an rng-seed component: identical member sets
// give identical hashes regardless of how the group was formed.
std::uint64_t member_set_hash(const std::vector<std::size_t>& members);

// Objective and per-member rates at the given powers.
std::pair<double, std::vector<double>> evaluate_objective(const PowerProblem& problem,
                                                          std::span<const double> powers);

// Singleton groups transmit at full power. Larger groups run the barrier
// solver from `restarts` random interior points plus the full-power
// point and return the best candidate; if no start reaches the
// stationarity tolerance the best point is returned flagged unconverged.
GroupSolution optimize_group(const PowerProblem& problem, int restarts, Rng& rng,
                             const SolverParams& params = SolverParams{});

}  // namespace d2d
