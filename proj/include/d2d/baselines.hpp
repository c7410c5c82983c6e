// Comparison schemes: the coalitional-game allocator and the no-reuse
// benchmark.
#pragma once

#include <cstdint>

#include "d2d/mode_channel.hpp"

namespace d2d {

struct CoalitionGameResult {
    Allocation allocation;
    std::vector<std::vector<std::size_t>> coalitions;
    std::vector<double> coalition_objectives;  // power-opt objective per coalition
    std::vector<double> total_trace;           // game total after each accepted move
    double initial_total = 0.0;
    std::size_t n_coalitions = 0;
    bool converged = true;         // false when the pass cap stopped the game
    bool solver_converged = true;  // false if any coalition's power solve failed
};

// Starts from singleton coalitions and repeatedly scans links in random
// order, accepting the first strictly-improving relocation that keeps
// every coalition feasible (one cellular link, pairwise interference test
// at gamma_init). Coalition values come from the same per-group power
// optimization as the main method, in cheap single-restart mode, keyed by
// member set so replays are order-independent. The game total is the
// value the channel budget can actually serve: every cellular-containing
// coalition plus the best remaining coalitions up to the budget.
CoalitionGameResult coalitional_game(const LinkTable& links, const FadingMatrix& fading,
                                     const SystemConfig& config, Rng& rng);

// Every link evaluated alone at full power (D2D pairs take the better of
// their two modes); all cellular links plus the highest-rate D2D links
// fill the channel budget, one dedicated channel each.
Allocation no_reuse_benchmark(const LinkTable& links, const FadingMatrix& fading,
                              const SystemConfig& config);

}  // namespace d2d
