#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

// Block-parallel helper. Work is split into fixed blocks claimed through an
// atomic counter; callers merge per-block results in block order afterwards,
// so output never depends on the worker count.

namespace underlay {

inline void parallel_for_blocks(std::int64_t n_blocks, int threads,
                                const std::function<void(std::int64_t)>& body) {
    if (n_blocks <= 0) return;
    if (threads <= 1 || n_blocks == 1) {
        for (std::int64_t b = 0; b < n_blocks; ++b) body(b);
        return;
    }
    std::atomic<std::int64_t> next{0};
    const int workers = static_cast<int>(std::min<std::int64_t>(threads, n_blocks));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::int64_t b = next.fetch_add(1);
                if (b >= n_blocks) return;
                body(b);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace underlay
