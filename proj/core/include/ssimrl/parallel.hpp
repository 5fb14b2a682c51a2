#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace ssimrl {

/// Run fn(i) for i in [0, n) across up to `threads` workers. Work is dealt
/// in strided fashion; fn must write its result by index so output is
/// identical regardless of thread count.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([t, n, workers, &fn] {
            for (std::size_t i = t; i < n; i += workers) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace ssimrl
