#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace orbk {

// Worker cap from ORBK_THREADS; unset, 0 or unparsable means one per core.
inline std::size_t thread_limit() {
    std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const char* env = std::getenv("ORBK_THREADS");
    if (!env || !*env) return hw;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v <= 0) return hw;
    return static_cast<std::size_t>(v);
}

// Runs body(i) for i in [0, n). Results must be written to per-index slots
// so the outcome does not depend on scheduling. The first exception thrown
// (by lowest index) is rethrown on the calling thread.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
    const std::size_t workers = std::min(thread_limit(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    std::size_t first_error_index = n;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        std::lock_guard lock(err_mutex);
                        if (i < first_error_index) {
                            first_error_index = i;
                            first_error = std::current_exception();
                        }
                    }
                }
            });
    }
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace orbk
