#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace moran {

// Runs fn(trial_index) for every index in [0, count) over `threads` workers.
// Callers make the per-trial work independent (derived seeds, preallocated
// result slots), so the outcome does not depend on the thread count.
inline void parallel_trials(std::uint64_t count, int threads,
                            const std::function<void(std::uint64_t)>& fn) {
    if (threads <= 1 || count < 2) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::uint64_t chunk = (count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        std::uint64_t lo = t * chunk;
        std::uint64_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn]() {
            for (std::uint64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace moran
