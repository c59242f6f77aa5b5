#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace momentforge {

// Number of worker threads: MOMENT_FORGE_THREADS if set (clamped to [1, 64]),
// otherwise the hardware concurrency.
int thread_count();

// ---------------------------------------------------------------------------
// Deterministic data parallelism.
//
// parallel_map evaluates fn(i) for i in [0, n) into a pre-sized vector.  Work
// is handed out through an atomic counter, so *which thread* computes a given
// index varies from run to run — but each result lands in its own slot and fn
// must be pure, so the output vector is identical for any thread count.
// All reductions downstream then use fixed-shape trees (pairwise_sum), making
// every reported number bit-for-bit reproducible.
// ---------------------------------------------------------------------------
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& fn, int threads = 0) {
    std::vector<T> out(n);
    if (n == 0) return out;
    int nt = threads > 0 ? threads : thread_count();
    if (nt > static_cast<int>(n)) nt = static_cast<int>(n);
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex err_mu;
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n || failed.load(std::memory_order_relaxed)) return;
            try {
                out[i] = fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

// Fixed-shape pairwise summation: the reduction tree depends only on v.size(),
// never on the thread count, so floating-point rounding is reproducible (and
// better conditioned than left-to-right accumulation).
template <class T>
T pairwise_sum(const std::vector<T>& v, T zero) {
    struct Rec {
        static T run(const T* a, std::size_t n, const T& z) {
            if (n == 0) return z;
            if (n == 1) return a[0];
            if (n == 2) return a[0] + a[1];
            std::size_t h = n / 2;
            return run(a, h, z) + run(a + h, n - h, z);
        }
    };
    return Rec::run(v.data(), v.size(), zero);
}

} // namespace momentforge
