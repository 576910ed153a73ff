#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace isa {

inline unsigned default_workers() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

/// Runs body(i) for i in [0, n) on up to `workers` threads (0 = hardware
/// concurrency). Indices are striped across threads; callers write results
/// into pre-sized slots so the outcome does not depend on scheduling. The
/// exception from the lowest failing index is rethrown.
template <typename Body>
void parallel_for(std::size_t n, unsigned workers, Body&& body) {
    if (workers == 0) workers = default_workers();
    const auto threads = static_cast<std::size_t>(std::min<std::size_t>(workers, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::mutex mu;
    std::size_t failed_index = n;
    std::exception_ptr failure;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += threads) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(mu);
                    if (i < failed_index) {
                        failed_index = i;
                        failure = std::current_exception();
                    }
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace isa
