// Ergodic Rayleigh-fading rates of links sharing a channel, via the
// sum-of-exponentials reduction to single integrals, plus a Monte Carlo
// estimator used as an independent cross-check.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "d2d/matrix.hpp"
#include "d2d/rng.hpp"

namespace d2d {

// One channel-sharing group, as seen by the rate evaluator. gains(k, j)
// is the expected gain from member k's transmitter to member j's
// receiver; powers are linear transmit SNRs in [0, p_max].
struct GroupChannel {
    std::vector<double> powers;
    std::vector<double> p_max;
    Matrix gains;

    std::size_t size() const { return powers.size(); }
};

// One term of a signed exponential mixture f(s) = sum_i coeff_i * e^(-rate_i s).
struct ExpMixtureTerm {
    double coeff;
    double rate;
};

// Mixture pdf of a sum of independent exponentials with the given
// (distinct) means. Throws DegenerateRatesError when two implied decay
// rates are within 1e-6 relative; callers that can tolerate a tiny
// perturbation should go through ergodic_rate instead.
std::vector<ExpMixtureTerm> hypoexp_pdf_mixture(std::span<const double> means);

// E{B log2(1+S)} for S distributed per the mixture, using the identity
// integral(ln(1+s) e^(-L s) ds) = e^L E1(L) / L per term.
double expected_log_rate(std::span<const ExpMixtureTerm> mixture, double bandwidth);

// E{B log2(1+X)} for a single exponential received SNR with the given
// mean; zero mean gives zero rate.
double single_link_rate(double mean_snr, double bandwidth);

// Expected rate of member `target` inside the group: the difference of
// the with-signal and interference-only log terms. Members whose power
// is below 1e-12 of their cap are dropped; near-equal decay rates are
// perturbed by distinct factors of order 1e-7 before the mixture is formed.
double ergodic_rate(const GroupChannel& group, std::size_t target, double bandwidth);

struct MonteCarloEstimate {
    double estimate;
    double std_error;
};

// Unbiased sampling estimate of the same quantity, with standard error.
MonteCarloEstimate monte_carlo_rate(const GroupChannel& group, std::size_t target,
                                    double bandwidth, std::size_t n_samples, Rng& rng);

}  // namespace d2d
