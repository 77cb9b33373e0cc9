#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

#include "genea/rng.hpp"

namespace genea {

// Runs `reps` replicates, replicate r drawing from stream (seed, stream_base + r),
// and collects the results indexed by replicate. The output (and hence every
// aggregate computed from it in index order) is identical for any thread count.
template <class Fn>
auto run_replicates(std::uint64_t seed, std::uint64_t stream_base, std::size_t reps,
                    unsigned threads, Fn fn)
    -> std::vector<std::decay_t<decltype(fn(std::size_t{0}, std::declval<RngStream&>()))>> {
    using T = std::decay_t<decltype(fn(std::size_t{0}, std::declval<RngStream&>()))>;
    std::vector<T> out(reps);
    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads <= 1 || reps < 2) {
        for (std::size_t i = 0; i < reps; ++i) {
            RngStream rng(seed, stream_base + i);
            out[i] = fn(i, rng);
        }
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        try {
            for (;;) {
                const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= reps || failed.load(std::memory_order_relaxed)) return;
                RngStream rng(seed, stream_base + i);
                out[i] = fn(i, rng);
            }
        } catch (...) {
            if (!failed.exchange(true)) first_error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failed) std::rethrow_exception(first_error);
    return out;
}

// Draws `count` iid variates, fn(rng) each, spread over a fixed number of
// streams (256 chunks regardless of thread count, so the output never depends
// on parallelism). Far cheaper than run_replicates for one-draw replicates.
template <class Fn>
std::vector<double> draw_many(std::uint64_t seed, std::uint64_t stream_base, std::size_t count,
                              unsigned threads, Fn fn) {
    const std::size_t chunks = std::min<std::size_t>(count, 256);
    auto blocks = run_replicates(
        seed, stream_base, chunks, threads, [&](std::size_t c, RngStream& rng) {
            const std::size_t lo = c * count / chunks;
            const std::size_t hi = (c + 1) * count / chunks;
            std::vector<double> v;
            v.reserve(hi - lo);
            for (std::size_t i = lo; i < hi; ++i) v.push_back(fn(rng));
            return v;
        });
    std::vector<double> out;
    out.reserve(count);
    for (auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
    return out;
}

// Kahan sum in index order; deterministic for a fixed input vector.
inline double sum_ordered(const std::vector<double>& xs) {
    double s = 0.0, c = 0.0;
    for (double x : xs) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

struct Moments {
    double mean = 0.0;
    double sd = 0.0; // sample standard deviation (n-1)
    double se = 0.0; // sd / sqrt(n)
    std::size_t n = 0;
};

inline Moments moments_of(const std::vector<double>& xs) {
    Moments m;
    m.n = xs.size();
    if (m.n == 0) return m;
    m.mean = sum_ordered(xs) / static_cast<double>(m.n);
    if (m.n < 2) return m;
    double ss = 0.0, c = 0.0;
    for (double x : xs) {
        const double d = (x - m.mean) * (x - m.mean);
        const double y = d - c;
        const double t = ss + y;
        c = (t - ss) - y;
        ss = t;
    }
    m.sd = std::sqrt(ss / static_cast<double>(m.n - 1));
    m.se = m.sd / std::sqrt(static_cast<double>(m.n));
    return m;
}

} // namespace genea
