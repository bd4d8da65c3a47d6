#ifndef FLOWFORGE_PARALLEL_HPP
#define FLOWFORGE_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "flowforge/core.hpp"

namespace flowforge {

/// Runs body(i) for i in [0, count) across the given number of worker
/// threads. Each worker atomically claims the next unprocessed index, so
/// the assignment of items to threads varies between runs — callers must
/// make item results depend only on the item index, never on the worker.
/// The first exception thrown by any body call is rethrown on the calling
/// thread after all workers have stopped.
template <typename Body>
void parallel_for(std::size_t count, int workers, Body&& body) {
    if (workers < 1)
        throw config_error("parallel_for: workers must be >= 1");
    if (count == 0) return;

    if (workers == 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }

    const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) break;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace flowforge

#endif
