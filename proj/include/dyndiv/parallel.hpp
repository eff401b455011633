#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace dyndiv {

/// Dynamic work queue over [0, count): each worker pulls the next index.
/// Callers keep results in per-index slots so the merge is deterministic
/// regardless of the worker count.
inline void parallel_for(std::uint64_t count, unsigned jobs,
                         const std::function<void(std::uint64_t)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::uint64_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (;;) {
            std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count || failed.load(std::memory_order_relaxed))
                return;
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true))
                    error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    unsigned n = std::min<std::uint64_t>(jobs, count);
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (failed.load())
        std::rethrow_exception(error);
}

inline unsigned default_jobs() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

} // namespace dyndiv
