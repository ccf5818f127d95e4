#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace isentropy {

inline unsigned resolve_threads(int requested) {
    if (requested > 0)
        return static_cast<unsigned>(requested);
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Static block partition of [0, n); fn(begin, end) runs on each worker.
// Callers write to disjoint output slots, so results are independent of
// the thread count.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    const unsigned t = resolve_threads(threads);
    if (t <= 1 || n < 2) {
        fn(std::size_t{0}, n);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(t, n);
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end)
            break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
}

} // namespace isentropy
