#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace ffpn {

/// Runs fn(i) for i in [0, count) across `workers` threads. Indices are
/// dealt in contiguous blocks and every invocation writes only to its
/// own preallocated slot, so results never depend on the worker count.
/// workers < 1 is treated as 1; with one worker everything runs inline.
template <typename Fn>
void parallel_for(size_t count, int workers, Fn&& fn) {
    if (count == 0) return;
    size_t n_workers = workers < 1 ? 1 : static_cast<size_t>(workers);
    if (n_workers > count) n_workers = count;
    if (n_workers == 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    size_t block = (count + n_workers - 1) / n_workers;
    for (size_t w = 0; w < n_workers; ++w) {
        size_t lo = w * block;
        size_t hi = lo + block < count ? lo + block : count;
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace ffpn
