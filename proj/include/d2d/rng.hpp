// Seeded random source with explicitly-coded draw algorithms so that a
// given seed reproduces the same stream on every platform.
#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace d2d {

// splitmix64 step; used to derive independent child seeds from a parent.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n). Multiplicative reduction; the bias of
    // ~n/2^64 is irrelevant at the sizes used here.
    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Exponential with the given mean, by inverse CDF.
    double exponential(double mean) { return -mean * std::log1p(-uniform()); }

    // Random permutation of {lo, lo+1, ..., hi-1}.
    std::vector<std::size_t> permutation(std::size_t lo, std::size_t hi) {
        std::vector<std::size_t> p(hi > lo ? hi - lo : 0);
        std::iota(p.begin(), p.end(), lo);
        for (std::size_t i = p.size(); i > 1; --i) {
            std::size_t j = uniform_index(i);
            std::swap(p[i - 1], p[j]);
        }
        return p;
    }

    std::vector<std::size_t> permutation(std::size_t n) { return permutation(0, n); }

private:
    std::mt19937_64 engine_;
};

}  // namespace d2d
