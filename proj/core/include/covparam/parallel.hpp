#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace covparam {

/// Run fn(i) for i in [0, n) on up to `threads` workers. Each index is
/// processed exactly once; callers write results into preallocated slots so
/// output order never depends on scheduling. The first exception thrown by
/// a worker is rethrown on the calling thread after all workers join.
template <typename Fn>
void parallel_for_index(std::size_t n, int threads, Fn&& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::atomic<bool> bail{false};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n && !bail.load(std::memory_order_relaxed);
                     i += workers)
                    fn(i);
            } catch (...) {
                const std::scoped_lock lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                bail.store(true, std::memory_order_relaxed);
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace covparam
