#include "d2d/rate_eval.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "d2d/errors.hpp"
#include "d2d/special_functions.hpp"

namespace d2d {

namespace {

constexpr double kPowerDropRel = 1e-12;   // powers below this fraction of cap are off
constexpr double kRateDegenRel = 1e-6;    // rates closer than this are degenerate
constexpr double kPerturbStep = 1e-7;     // relative nudge applied per offending rate

std::vector<double> rates_from_means(std::span<const double> means) {
    std::vector<double> rates;
    rates.reserve(means.size());
    for (double m : means) {
        if (!(m > 0.0) || !std::isfinite(m))
            throw NumericFailureError("exponential mean must be positive and finite, got " +
                                      std::to_string(m));
        rates.push_back(1.0 / m);
    }
    return rates;
}

bool near_equal(double a, double b) {
    return std::abs(a - b) < kRateDegenRel * std::max(a, b);
}

// Nudges every rate involved in a near-equal pair by a distinct
// multiplicative factor so the partial-fraction coefficients stay finite.
void separate_rates(std::vector<double>& rates) {
    std::vector<bool> offending(rates.size(), false);
    for (std::size_t i = 0; i < rates.size(); ++i)
        for (std::size_t j = i + 1; j < rates.size(); ++j)
            if (near_equal(rates[i], rates[j])) offending[i] = offending[j] = true;
    int k = 0;
    for (std::size_t i = 0; i < rates.size(); ++i)
        if (offending[i]) rates[i] *= 1.0 + (++k) * kPerturbStep;
}

std::vector<ExpMixtureTerm> mixture_from_rates(const std::vector<double>& rates) {
    std::vector<ExpMixtureTerm> mixture;
    mixture.reserve(rates.size());
    for (std::size_t i = 0; i < rates.size(); ++i) {
        // c_i = rate_i * prod_{j != i} rate_j / (rate_j - rate_i), formed as a
        // product of ratios so large groups cannot overflow the numerator.
        double c = rates[i];
        for (std::size_t j = 0; j < rates.size(); ++j) {
            if (j == i) continue;
            c *= rates[j] / (rates[j] - rates[i]);
        }
        if (!std::isfinite(c))
            throw NumericFailureError("non-finite mixture coefficient (coincident rates?)");
        mixture.push_back({c, rates[i]});
    }
    return mixture;
}

}  // namespace

std::vector<ExpMixtureTerm> hypoexp_pdf_mixture(std::span<const double> means) {
    std::vector<double> rates = rates_from_means(means);
    for (std::size_t i = 0; i < rates.size(); ++i)
        for (std::size_t j = i + 1; j < rates.size(); ++j)
            if (near_equal(rates[i], rates[j]))
                throw DegenerateRatesError("rates " + std::to_string(rates[i]) + " and " +
                                           std::to_string(rates[j]) +
                                           " are too close to separate");
    return mixture_from_rates(rates);
}

double expected_log_rate(std::span<const ExpMixtureTerm> mixture, double bandwidth) {
    double sum = 0.0;
    for (const auto& term : mixture)
        sum += term.coeff / term.rate * exp_e1(term.rate);
    double result = bandwidth * sum / std::numbers::ln2;
    if (!std::isfinite(result))
        throw NumericFailureError("expected_log_rate produced a non-finite value");
    return result;
}

double single_link_rate(double mean_snr, double bandwidth) {
    if (mean_snr <= 0.0) return 0.0;
    return bandwidth * exp_e1(1.0 / mean_snr) / std::numbers::ln2;
}

double ergodic_rate(const GroupChannel& group, std::size_t target, double bandwidth) {
    const std::size_t n = group.size();
    if (group.powers[target] < kPowerDropRel * group.p_max[target]) return 0.0;

    double target_mean = group.powers[target] * group.gains(target, target);
    std::vector<double> interferer_means;
    interferer_means.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (k == target) continue;
        if (group.powers[k] < kPowerDropRel * group.p_max[k]) continue;
        double m = group.powers[k] * group.gains(k, target);
        if (m > 0.0) interferer_means.push_back(m);
    }

    if (interferer_means.empty()) return single_link_rate(target_mean, bandwidth);

    std::vector<double> full_rates = rates_from_means(interferer_means);
    full_rates.push_back(1.0 / target_mean);
    std::vector<double> intf_rates(full_rates.begin(), full_rates.end() - 1);
    separate_rates(full_rates);
    separate_rates(intf_rates);

    double with_signal = expected_log_rate(mixture_from_rates(full_rates), bandwidth);
    double interference_only = expected_log_rate(mixture_from_rates(intf_rates), bandwidth);
    // The true difference is positive; cancellation can leave a tiny
    // negative residue when interference dominates.
    return std::max(0.0, with_signal - interference_only);
}

MonteCarloEstimate monte_carlo_rate(const GroupChannel& group, std::size_t target,
                                    double bandwidth, std::size_t n_samples, Rng& rng) {
    const std::size_t n = group.size();
    double target_mean = group.powers[target] * group.gains(target, target);
    std::vector<double> interferer_means;
    for (std::size_t k = 0; k < n; ++k) {
        if (k == target) continue;
        double m = group.powers[k] * group.gains(k, target);
        if (m > 0.0) interferer_means.push_back(m);
    }

    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t s = 0; s < n_samples; ++s) {
        double interference = 0.0;
        for (double m : interferer_means) interference += rng.exponential(m);
        double signal = target_mean > 0.0 ? rng.exponential(target_mean) : 0.0;
        double v = bandwidth * std::log2(1.0 + signal / (1.0 + interference));
        sum += v;
        sum_sq += v * v;
    }
    double mean = sum / static_cast<double>(n_samples);
    double se = 0.0;
    if (n_samples > 1) {
        double var = (sum_sq - sum * mean) / static_cast<double>(n_samples - 1);
        se = std::sqrt(std::max(0.0, var) / static_cast<double>(n_samples));
    }
    return {mean, se};
}

}  // namespace d2d
