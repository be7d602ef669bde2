#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace pour {

/// Runs f(i) for i in [0, n) on up to `threads` worker threads with static
/// chunking. Each index must write only to its own slot; callers reduce the
/// slots afterwards in index order, which keeps results bit-identical no
/// matter how many threads ran.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
    if (n == 0) return;
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = static_cast<std::size_t>(t) * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &f] {
            for (std::size_t i = lo; i < hi; ++i) f(i);
        });
    }
    for (auto& th : pool) th.join();
}

inline unsigned default_threads() {
    unsigned hc = std::thread::hardware_concurrency();
    return std::clamp(hc, 1u, 8u);
}

} // namespace pour
