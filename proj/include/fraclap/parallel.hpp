#pragma once

#include <thread>
#include <vector>

#include "fraclap/types.hpp"

namespace fraclap {

/// Static-chunk parallel loop; body(begin, end) runs on disjoint ranges so
/// per-node writes stay deterministic for any thread count.
template <class F>
void parallel_for(Index n, int threads, F&& body) {
    if (threads <= 1 || n < 256) {
        body(Index{0}, n);
        return;
    }
    const int nt = std::min<int>(threads, static_cast<int>(n));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nt));
    const Index chunk = (n + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
        const Index lo = static_cast<Index>(t) * chunk;
        const Index hi = std::min<Index>(lo + chunk, n);
        if (lo >= hi)
            break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool)
        th.join();
}

} // namespace fraclap
