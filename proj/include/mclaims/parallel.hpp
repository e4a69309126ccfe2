#ifndef MCLAIMS_PARALLEL_HPP
#define MCLAIMS_PARALLEL_HPP

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mclaims {

/// Runs body(i) for i in [0, count) on contiguous chunks, one per hardware
/// thread. body must only write state owned by index i. The first exception
/// thrown by any worker is rethrown on the caller.
template <class Body>
void parallel_for(std::int64_t count, Body&& body, std::int64_t min_chunk = 4096) {
    const auto hw = static_cast<std::int64_t>(std::max(1u, std::thread::hardware_concurrency()));
    const std::int64_t workers = std::clamp<std::int64_t>(count / std::max<std::int64_t>(1, min_chunk), 1, hw);
    if (workers <= 1) {
        for (std::int64_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::int64_t chunk = (count + workers - 1) / workers;
    for (std::int64_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                const std::int64_t end = std::min(count, (w + 1) * chunk);
                for (std::int64_t i = w * chunk; i < end; ++i) body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    pool.clear();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace mclaims

#endif
