// Link partitioning: pairwise-interference conflict graph with escalating
// per-link thresholds, Welsh-Powell coloring, and the bisection search
// that sizes the partition to the channel budget.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "d2d/net_model.hpp"

namespace d2d {

struct ConflictGraph {
    std::size_t n_vertices = 0;
    std::vector<std::vector<bool>> adjacency;   // symmetric, empty diagonal
    std::vector<double> final_thresholds;       // per-vertex gamma after escalation

    bool adjacent(std::size_t i, std::size_t j) const { return adjacency[i][j]; }
    std::size_t degree(std::size_t i) const;
};

struct Partition {
    std::vector<std::vector<std::size_t>> groups;  // color classes, members ascending
    std::size_t n_groups() const { return groups.size(); }
};

// Both directions of the pairwise interference test at the given
// thresholds; false whenever both links are cellular.
bool pair_feasible(const LinkTable& links, const FadingMatrix& fading, std::size_t i,
                   std::size_t j, double gamma_i, double gamma_j);

// Scans every vertex pair once, in nested random-permutation order.
// Cellular-cellular pairs always conflict; other pairs conflict when the
// interference test fails at the pair's current thresholds; a passing
// pair bumps both thresholds by delta_gamma.
ConflictGraph build_conflict_graph(const LinkTable& links, const FadingMatrix& fading,
                                   double gamma, double delta_gamma, Rng& rng);

// Greedy coloring in descending-degree order (ties by ascending index);
// each vertex takes the smallest color absent from its colored neighbors.
Partition welsh_powell(const ConflictGraph& graph);

struct GammaSearchResult {
    Partition partition;
    ConflictGraph graph;
    double gamma = 0.0;  // threshold that produced the partition
    bool exact = true;   // n_groups == n_channels, or the early-exit branch hit
};

// Finds a threshold whose partition size matches the channel budget:
// early-exits if gamma_init already yields n_g >= N, otherwise doubles
// until n_g >= N and bisects. Every inner graph build replays inner_seed,
// making n_g a deterministic function of the threshold. If the iteration
// caps pass with no exact hit, returns the smallest-threshold partition
// seen with n_g >= N, flagged inexact.
GammaSearchResult adjust_gamma(const LinkTable& links, const FadingMatrix& fading,
                               double gamma_init, double delta_gamma, int n_channels,
                               std::uint64_t inner_seed);

// Convenience overload drawing the replayed seed from rng.
GammaSearchResult adjust_gamma(const LinkTable& links, const FadingMatrix& fading,
                               double gamma_init, double delta_gamma, int n_channels,
                               Rng& rng);

}  // namespace d2d
