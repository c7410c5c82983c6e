#include "d2d/power_opt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "d2d/rate_eval.hpp"

namespace d2d {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInteriorPad = 1e-6;  // keeps starts strictly inside the box
constexpr double kKktTol = 1e-3;       // stationarity residual for the converged flag

// The solver works in normalized coordinates: x[0..n) are power
// fractions of p_max in (0,1), x[n] is the epigraph rate in units of
// bandwidth. Objective values are in bits/s/Hz.
struct NormalizedProblem {
    const PowerProblem& p;
    mutable GroupChannel scratch;

    explicit NormalizedProblem(const PowerProblem& problem) : p(problem) {
        scratch.p_max = p.p_max;
        scratch.gains = p.gains;
        scratch.powers.resize(p.size());
    }

    std::vector<double> rates(std::span<const double> x) const {
        for (std::size_t j = 0; j < p.size(); ++j) scratch.powers[j] = x[j] * p.p_max[j];
        std::vector<double> r(p.size());
        for (std::size_t j = 0; j < p.size(); ++j) r[j] = ergodic_rate(scratch, j, 1.0);
        return r;
    }

    double objective(std::span<const double> x) const {
        auto r = rates(x);
        double sum = 0.0;
        for (double v : r) sum += v;
        return sum + p.mu * *std::min_element(r.begin(), r.end());
    }

    // Barrier-augmented objective; -inf outside the strict interior.
    double barrier_value(std::span<const double> x, double t) const {
        const std::size_t n = p.size();
        for (std::size_t j = 0; j < n; ++j)
            if (x[j] <= 0.0 || x[j] >= 1.0) return kNegInf;
        auto r = rates(x);
        double value = p.mu * x[n];
        double barrier = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            value += r[j];
            double slack = r[j] - x[n];
            if (slack <= 0.0) return kNegInf;
            barrier += std::log(x[j]) + std::log(1.0 - x[j]) + std::log(slack);
        }
        return value + t * barrier;
    }
};

// Central differences, falling back to one-sided at the barrier edge.
std::vector<double> fd_gradient(const NormalizedProblem& np, std::vector<double>& x, double t,
                                double f_at_x, double h) {
    std::vector<double> g(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        double saved = x[i];
        x[i] = saved + h;
        double fp = np.barrier_value(x, t);
        x[i] = saved - h;
        double fm = np.barrier_value(x, t);
        x[i] = saved;
        if (std::isfinite(fp) && std::isfinite(fm))
            g[i] = (fp - fm) / (2.0 * h);
        else if (std::isfinite(fp))
            g[i] = (fp - f_at_x) / h;
        else if (std::isfinite(fm))
            g[i] = (f_at_x - fm) / h;
    }
    return g;
}

struct SolveOutcome {
    std::vector<double> x;
    bool stationary = false;
};

// BFGS ascent with backtracking on each barrier subproblem. The smoothed
// min-rate kink has curvature of order 1/t near the active constraint,
// which plain gradient steps cannot handle once t is small; the
// quasi-Newton inverse-Hessian soaks that up.
SolveOutcome solve_from(const NormalizedProblem& np, std::vector<double> x,
                        const SolverParams& params) {
    const double h = params.fd_step;
    const std::size_t dim = x.size();
    double t = params.barrier_init;
    double prev_objective = np.objective(x);
    bool stationary = false;

    std::vector<double> hessian_inv(dim * dim);
    auto reset_hessian = [&] {
        std::fill(hessian_inv.begin(), hessian_inv.end(), 0.0);
        for (std::size_t i = 0; i < dim; ++i) hessian_inv[i * dim + i] = 1.0;
    };

    for (int round = 0; round < params.barrier_rounds; ++round) {
        double f = np.barrier_value(x, t);
        if (!std::isfinite(f)) break;
        stationary = false;
        reset_hessian();
        // Barrier features shrink with t; the difference step must track
        // them or late-round gradients turn into noise.
        const double h_eff = h * std::min(1.0, std::sqrt(t));
        auto g = fd_gradient(np, x, t, f, h_eff);

        for (int iter = 0; iter < params.max_inner_iters; ++iter) {
            double gnorm_inf = 0.0;
            for (double v : g) gnorm_inf = std::max(gnorm_inf, std::abs(v));
            if (gnorm_inf <= kKktTol * std::max(1.0, std::abs(f))) {
                stationary = true;
                break;
            }

            std::vector<double> dir(dim, 0.0);
            double slope = 0.0;  // g . dir, must be positive for ascent
            for (std::size_t i = 0; i < dim; ++i) {
                for (std::size_t j = 0; j < dim; ++j)
                    dir[i] += hessian_inv[i * dim + j] * g[j];
                slope += g[i] * dir[i];
            }
            if (!(slope > 0.0)) {
                reset_hessian();
                dir = g;
                slope = 0.0;
                for (double v : g) slope += v * v;
            }

            double alpha = 1.0;
            bool accepted = false;
            std::vector<double> trial(dim);
            double ft = 0.0;
            while (alpha > 1e-14) {
                for (std::size_t i = 0; i < dim; ++i) trial[i] = x[i] + alpha * dir[i];
                ft = np.barrier_value(trial, t);
                if (ft > f + 1e-4 * alpha * slope) {
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (!accepted) break;  // stalled at this multiplier

            auto g_new = fd_gradient(np, trial, t, ft, h_eff);
            // BFGS update of the inverse Hessian (maximization form):
            // s = step, y = g_old - g_new so that s.y > 0 on ascent.
            std::vector<double> s(dim), y(dim);
            double sy = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                s[i] = trial[i] - x[i];
                y[i] = g[i] - g_new[i];
                sy += s[i] * y[i];
            }
            if (sy > 1e-12) {
                std::vector<double> hy(dim, 0.0);
                double yhy = 0.0;
                for (std::size_t i = 0; i < dim; ++i) {
                    for (std::size_t j = 0; j < dim; ++j)
                        hy[i] += hessian_inv[i * dim + j] * y[j];
                }
                for (std::size_t i = 0; i < dim; ++i) yhy += y[i] * hy[i];
                double c1 = (sy + yhy) / (sy * sy);
                for (std::size_t i = 0; i < dim; ++i)
                    for (std::size_t j = 0; j < dim; ++j)
                        hessian_inv[i * dim + j] += c1 * s[i] * s[j] -
                                                    (hy[i] * s[j] + s[i] * hy[j]) / sy;
            }
            x = trial;
            f = ft;
            g = std::move(g_new);
        }

        double objective = np.objective(x);
        bool settled = std::abs(objective - prev_objective) <=
                       params.tolerance * std::max(1.0, std::abs(prev_objective));
        prev_objective = objective;
        if (std::getenv("D2D_SOLVER_DEBUG")) {
            double gn = 0.0;
            for (double v : g) gn = std::max(gn, std::abs(v));
            std::fprintf(stderr, "  round=%d t=%.1e f=%.8g obj=%.8g gnorm=%.3g stat=%d settled=%d\n",
                         round, t, f, objective, gn, int(stationary), int(settled));
        }
        if (settled && round > 0) break;
        t *= params.barrier_shrink;
    }
    return {std::move(x), stationary};
}

GroupSolution make_solution(const PowerProblem& problem, std::span<const double> powers,
                            double epigraph_r, bool converged) {
    GroupSolution s;
    s.powers.assign(powers.begin(), powers.end());
    for (std::size_t j = 0; j < problem.size(); ++j)
        s.powers[j] = std::clamp(s.powers[j], 0.0, problem.p_max[j]);
    auto [objective, rates] = evaluate_objective(problem, s.powers);
    s.rates = std::move(rates);
    s.objective = objective;
    s.sum_rate = 0.0;
    for (double r : s.rates) s.sum_rate += r;
    s.min_rate = *std::min_element(s.rates.begin(), s.rates.end());
    s.epigraph_r = epigraph_r;
    s.converged = converged;
    return s;
}

}  // namespace

PowerProblem make_group_problem(const std::vector<std::size_t>& members, const LinkTable& links,
                                const FadingMatrix& fading, const SystemConfig& config) {
    PowerProblem p;
    p.members = members;
    p.bandwidth = config.bandwidth_hz;
    p.mu = config.mu_coeff * static_cast<double>(members.size());
    p.p_max.reserve(members.size());
    for (std::size_t m : members) p.p_max.push_back(links.links[m].snr_max);
    p.gains = Matrix(members.size(), members.size());
    for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = 0; b < members.size(); ++b)
            p.gains(a, b) = fading.zbar(members[a], members[b]);
    return p;
}

std::uint64_t member_set_hash(const std::vector<std::size_t>& members) {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::size_t m : members) h = mix_seed(h, m);
    return h;
}

std::pair<double, std::vector<double>> evaluate_objective(const PowerProblem& problem,
                                                          std::span<const double> powers) {
    GroupChannel ch;
    ch.powers.assign(powers.begin(), powers.end());
    ch.p_max = problem.p_max;
    ch.gains = problem.gains;
    std::vector<double> rates(problem.size());
    for (std::size_t j = 0; j < problem.size(); ++j)
        rates[j] = ergodic_rate(ch, j, problem.bandwidth);
    double sum = 0.0;
    for (double r : rates) sum += r;
    double objective = sum + problem.mu * *std::min_element(rates.begin(), rates.end());
    return {objective, std::move(rates)};
}

GroupSolution optimize_group(const PowerProblem& problem, int restarts, Rng& rng,
                             const SolverParams& params) {
    const std::size_t n = problem.size();
    if (n == 1) {
        double p = problem.p_max[0];
        auto s = make_solution(problem, std::span<const double>(&p, 1), 0.0, true);
        s.epigraph_r = s.min_rate;
        return s;
    }

    NormalizedProblem np(problem);

    // Normalized starting points: full power plus random interior draws.
    std::vector<std::vector<double>> starts;
    starts.push_back(std::vector<double>(n, 1.0 - kInteriorPad));
    for (int k = 0; k < restarts; ++k) {
        std::vector<double> y(n);
        for (std::size_t j = 0; j < n; ++j) y[j] = rng.uniform(0.01, 0.99);
        starts.push_back(std::move(y));
    }

    struct Candidate {
        std::vector<double> y;  // power fractions only
        double r_norm;          // epigraph value, bandwidth units
        double objective_norm;
        bool stationary;
    };
    std::vector<Candidate> candidates;
    auto add_raw = [&](const std::vector<double>& y) {
        auto rates = np.rates(y);
        double min_rate = *std::min_element(rates.begin(), rates.end());
        double sum = 0.0;
        for (double r : rates) sum += r;
        candidates.push_back({y, min_rate, sum + problem.mu * min_rate, false});
    };
    // The exact full-power corner is always a feasible candidate.
    add_raw(std::vector<double>(n, 1.0));

    for (auto& y0 : starts) {
        add_raw(y0);  // output must never regress below an evaluated start

        auto rates0 = np.rates(y0);
        double r0 = *std::min_element(rates0.begin(), rates0.end()) - kInteriorPad;
        std::vector<double> x = y0;
        x.push_back(r0);
        auto outcome = solve_from(np, std::move(x), params);
        std::vector<double> y_end(outcome.x.begin(), outcome.x.end() - 1);
        double r_end = outcome.x.back();
        auto rates_end = np.rates(y_end);
        double sum = 0.0;
        for (double r : rates_end) sum += r;
        double min_rate = *std::min_element(rates_end.begin(), rates_end.end());
        candidates.push_back(
            {std::move(y_end), r_end, sum + problem.mu * min_rate, outcome.stationary});
    }

    const Candidate* best = &candidates.front();
    for (const auto& c : candidates)
        if (c.objective_norm > best->objective_norm) best = &c;

    // The returned point may be a box corner the barrier path can only
    // approach; it counts as converged when some stationary solve
    // certifies (essentially) the same objective.
    double best_stationary = -std::numeric_limits<double>::infinity();
    for (const auto& c : candidates)
        if (c.stationary) best_stationary = std::max(best_stationary, c.objective_norm);
    bool converged = best_stationary >=
                     best->objective_norm - 1e-3 * std::max(1.0, std::abs(best->objective_norm));

    std::vector<double> powers(n);
    for (std::size_t j = 0; j < n; ++j) powers[j] = best->y[j] * problem.p_max[j];
    return make_solution(problem, powers, best->r_norm * problem.bandwidth, converged);
}

}  // namespace d2d
