// parallel.hpp -- deterministic index-ordered parallel loop
//
// Bodies write to disjoint, preallocated slots, so the result is identical
// for any worker count. The first exception thrown by a body is rethrown on
// the calling thread after all workers join.

#pragma once

#include <algorithm>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace cjt {

inline void parallel_for(int count, const std::function<void(int)>& body, int workers = 0) {
    if (count <= 0) return;
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, count);

    if (workers == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }

    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            // static block partition: worker w handles [lo, hi)
            const int lo = static_cast<int>(static_cast<long long>(count) * w / workers);
            const int hi = static_cast<int>(static_cast<long long>(count) * (w + 1) / workers);
            for (int i = lo; i < hi; ++i) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace cjt
