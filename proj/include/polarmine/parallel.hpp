#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace polarmine {

// Runs fn(begin, end) over contiguous chunks of [0, n) on up to n_threads
// workers. Chunk boundaries depend only on (n, n_threads); callers that
// merge per-chunk results in chunk order get thread-count-independent output
// as long as fn itself is pure.
template <typename Fn>
void parallel_chunks(std::size_t n, unsigned n_threads, Fn&& fn) {
    if (n == 0) return;
    if (n_threads <= 1 || n < 2) {
        fn(std::size_t{0}, n);
        return;
    }
    const std::size_t chunks = std::min<std::size_t>(n_threads, n);
    const std::size_t step = (n + chunks - 1) / chunks;
    std::vector<std::thread> workers;
    workers.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t lo = c * step;
        const std::size_t hi = std::min(n, lo + step);
        if (lo >= hi) break;
        workers.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& w : workers) w.join();
}

}  // namespace polarmine
