#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace riesz_tf {

// Parallelism cap: RIESZ_TF_THREADS wins over hardware concurrency.
inline int max_threads() {
    if (const char* env = std::getenv("RIESZ_TF_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1)
            return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : int(hc);
}

// Static block split of [0,n); results must be written to disjoint slots so
// the outcome is scheduling-independent.
template <class F>
void parallel_for(std::size_t n, F&& body, int threads = 0) {
    if (threads <= 0)
        threads = max_threads();
    threads = int(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi)
            break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i)
                body(i);
        });
    }
    for (auto& th : pool)
        th.join();
}

} // namespace riesz_tf
