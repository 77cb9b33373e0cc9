#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace genea {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Reproducible stream of random draws. A given (seed, stream_id) pair always yields
// the same sequence; distinct stream_ids give independent streams. The engine is
// mt19937_64 (sequence pinned by the standard) seeded with
// splitmix64(splitmix64(seed) ^ (stream_id + 0x9e3779b97f4a7c15)). All variate
// transforms are done here from raw engine words, not via std::*_distribution,
// whose sequences are implementation-defined.
//
// A stream is owned by exactly one thread at a time; parallel replicates use
// distinct stream_ids (see run_replicates).
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_id_(stream_id),
          eng_(splitmix64(splitmix64(seed) ^ (stream_id + 0x9e3779b97f4a7c15ULL))) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() { return eng_(); }

    // Uniform on the open interval (0,1). (x >> 11) * 2^-53 lies in [0,1);
    // an exact 0 is resampled so log() is always finite.
    double uniform01() {
        for (;;) {
            const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
            if (u != 0.0) return u;
        }
    }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    double exponential(double rate) {
        if (!(rate > 0.0)) throw std::invalid_argument("exponential: rate must be > 0");
        return -std::log(uniform01()) / rate;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Exact Poisson sampler. Knuth's product method below kSmallMean, mode-centered
    // inversion (one uniform, expansion m, m-1, m+1, m-2, ...) above it.
    std::uint64_t poisson(double mean) {
        if (!(mean >= 0.0)) throw std::invalid_argument("poisson: mean must be >= 0");
        if (mean == 0.0) return 0;
        if (mean < kSmallMean) {
            const double limit = std::exp(-mean);
            std::uint64_t k = 0;
            double prod = uniform01();
            while (prod > limit) {
                ++k;
                prod *= uniform01();
            }
            return k;
        }
        const double u = uniform01();
        const std::uint64_t mode = static_cast<std::uint64_t>(mean);
        const double log_pm = static_cast<double>(mode) * std::log(mean) - mean -
                              std::lgamma(static_cast<double>(mode) + 1.0);
        const double pm = std::exp(log_pm);
        double acc = pm;
        if (u <= acc) return mode;
        double p_lo = pm, p_hi = pm;
        std::uint64_t k_lo = mode, k_hi = mode;
        // hard cap: mean + 2000*sigma, unreachable in practice
        const std::uint64_t k_max =
            static_cast<std::uint64_t>(mean + 2000.0 * std::sqrt(mean) + 100.0);
        while (k_hi < k_max) {
            if (k_lo > 0) {
                p_lo *= static_cast<double>(k_lo) / mean;
                --k_lo;
                acc += p_lo;
                if (u <= acc) return k_lo;
            }
            p_hi *= mean / static_cast<double>(k_hi + 1);
            ++k_hi;
            acc += p_hi;
            if (u <= acc) return k_hi;
        }
        return k_hi;
    }

private:
    static constexpr double kSmallMean = 30.0;
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 eng_;
};

} // namespace genea
