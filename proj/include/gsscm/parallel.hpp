#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gsscm {

/// Run fn(0) ... fn(n_tasks-1) on up to `threads` workers. Tasks must write
/// to disjoint slots; the output is then independent of the worker count.
/// The first exception thrown by a task is rethrown after all workers join.
template <typename Fn>
void parallel_for(int n_tasks, int threads, Fn&& fn) {
    if (n_tasks <= 0) return;
    if (threads <= 1 || n_tasks == 1) {
        for (int i = 0; i < n_tasks; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            const int task = next.fetch_add(1);
            if (task >= n_tasks || failed.load()) return;
            try {
                fn(task);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int count = std::min(threads, n_tasks);
    pool.reserve(static_cast<std::size_t>(count));
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace gsscm
