#include "d2d/partition.hpp"

#include <algorithm>
#include <numeric>

namespace d2d {

namespace {
constexpr int kDoublingCap = 40;
constexpr int kBisectionCap = 50;
}  // namespace

std::size_t ConflictGraph::degree(std::size_t i) const {
    return static_cast<std::size_t>(
        std::count(adjacency[i].begin(), adjacency[i].end(), true));
}

bool pair_feasible(const LinkTable& links, const FadingMatrix& fading, std::size_t i,
                   std::size_t j, double gamma_i, double gamma_j) {
    if (links.is_cellular(i) && links.is_cellular(j)) return false;
    double signal_i = links.links[i].snr_max * fading.zbar(i, i);
    double signal_j = links.links[j].snr_max * fading.zbar(j, j);
    double cross_ji = links.links[j].snr_max * fading.zbar(j, i);  // j's tx into i's rx
    double cross_ij = links.links[i].snr_max * fading.zbar(i, j);
    return signal_i / cross_ji >= gamma_i && signal_j / cross_ij >= gamma_j;
}

ConflictGraph build_conflict_graph(const LinkTable& links, const FadingMatrix& fading,
                                   double gamma, double delta_gamma, Rng& rng) {
    const std::size_t n = links.size();
    ConflictGraph graph;
    graph.n_vertices = n;
    graph.adjacency.assign(n, std::vector<bool>(n, false));
    graph.final_thresholds.assign(n, gamma);

    for (std::size_t i : rng.permutation(n)) {
        for (std::size_t j : rng.permutation(i + 1, n)) {
            if (pair_feasible(links, fading, i, j, graph.final_thresholds[i],
                              graph.final_thresholds[j])) {
                graph.final_thresholds[i] += delta_gamma;
                graph.final_thresholds[j] += delta_gamma;
            } else {
                graph.adjacency[i][j] = graph.adjacency[j][i] = true;
            }
        }
    }
    return graph;
}

Partition welsh_powell(const ConflictGraph& graph) {
    const std::size_t n = graph.n_vertices;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::size_t> degree(n);
    for (std::size_t v = 0; v < n; ++v) degree[v] = graph.degree(v);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });

    std::vector<int> color(n, -1);
    int n_colors = 0;
    for (std::size_t v : order) {
        std::vector<bool> used(static_cast<std::size_t>(n_colors) + 1, false);
        for (std::size_t u = 0; u < n; ++u)
            if (graph.adjacency[v][u] && color[u] >= 0) used[static_cast<std::size_t>(color[u])] = true;
        int c = 0;
        while (used[static_cast<std::size_t>(c)]) ++c;
        color[v] = c;
        n_colors = std::max(n_colors, c + 1);
    }

    Partition partition;
    partition.groups.assign(static_cast<std::size_t>(n_colors), {});
    for (std::size_t v = 0; v < n; ++v)
        partition.groups[static_cast<std::size_t>(color[v])].push_back(v);
    return partition;
}

namespace {

GammaSearchResult run_once(const LinkTable& links, const FadingMatrix& fading, double gamma,
                           double delta_gamma, std::uint64_t inner_seed) {
    Rng rng(inner_seed);
    GammaSearchResult r;
    r.graph = build_conflict_graph(links, fading, gamma, delta_gamma, rng);
    r.partition = welsh_powell(r.graph);
    r.gamma = gamma;
    return r;
}

}  // namespace

GammaSearchResult adjust_gamma(const LinkTable& links, const FadingMatrix& fading,
                               double gamma_init, double delta_gamma, int n_channels,
                               std::uint64_t inner_seed) {
    const std::size_t target = static_cast<std::size_t>(n_channels);
    auto evaluate = [&](double g) {
        return run_once(links, fading, g, delta_gamma, inner_seed);
    };

    GammaSearchResult current = evaluate(gamma_init);
    if (current.partition.n_groups() >= target) return current;  // early exit

    // Smallest threshold seen whose partition covers the budget; the
    // fallback when bisection cannot land on n_g == N exactly.
    GammaSearchResult best_over;
    bool have_over = false;
    auto note = [&](const GammaSearchResult& r) {
        if (r.partition.n_groups() >= target && (!have_over || r.gamma < best_over.gamma)) {
            best_over = r;
            have_over = true;
        }
    };

    double gamma_hat = gamma_init;
    for (int i = 0; i < kDoublingCap && current.partition.n_groups() < target; ++i) {
        gamma_hat *= 2.0;
        current = evaluate(gamma_hat);
        note(current);
    }
    if (current.partition.n_groups() == target) return current;
    if (current.partition.n_groups() < target) {  // doubling cap exhausted
        current.exact = false;
        return current;
    }

    double lo = gamma_hat / 2.0;
    double hi = gamma_hat;
    for (int i = 0; i < kBisectionCap; ++i) {
        double mid = (lo + hi) / 2.0;
        current = evaluate(mid);
        note(current);
        if (current.partition.n_groups() == target) return current;
        if (current.partition.n_groups() > target)
            hi = mid;
        else
            lo = mid;
    }
    best_over.exact = false;
    return best_over;
}

GammaSearchResult adjust_gamma(const LinkTable& links, const FadingMatrix& fading,
                               double gamma_init, double delta_gamma, int n_channels,
                               Rng& rng) {
    return adjust_gamma(links, fading, gamma_init, delta_gamma, n_channels, rng.next_u64());
}

}  // namespace d2d
