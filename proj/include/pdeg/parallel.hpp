// Minimal fork-join helper for the sweep commands.  Tasks are indexed so
// callers write into preallocated slots and emit in input order, keeping
// output byte-identical regardless of scheduling.
#ifndef PDEG_PARALLEL_HPP
#define PDEG_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pdeg {

// PDEG_THREADS overrides hardware concurrency; values < 1 are ignored
inline int thread_count() {
    if (const char* env = std::getenv("PDEG_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [0, n).  The first exception thrown by any task is
// rethrown on the caller once all workers have drained.
template <class Fn>
inline void parallel_for(size_t n, Fn&& fn, int threads = thread_count()) {
    if (n == 0) return;
    if (threads > static_cast<int>(n)) threads = static_cast<int>(n);
    if (threads <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace pdeg

#endif
