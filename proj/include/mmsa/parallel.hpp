#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace mmsa {

// Runs fn(i) for i in [0, count) on up to n_threads workers. Work items must
// not share mutable state; the first exception thrown by any item is
// rethrown after all workers join. Results are independent of worker count.
inline void parallel_for(int count, int n_threads, const std::function<void(int)>& fn) {
    if (count <= 0) return;
    if (n_threads <= 1 || count == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    const int workers = std::min(n_threads, count);
    std::atomic<int> cursor{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto run = [&]() {
        for (;;) {
            const int i = cursor.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace mmsa
