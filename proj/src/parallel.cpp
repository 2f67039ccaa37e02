#include "knotkit/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace knotkit {

namespace {
std::atomic<int> g_thread_count{0};
}

void set_thread_count(int k) { g_thread_count.store(k < 0 ? 0 : k); }

int thread_count() {
    int k = g_thread_count.load();
    if (k > 0) return k;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(int begin, int end, const std::function<void(int)>& fn) {
    const int total = end - begin;
    if (total <= 0) return;
    int workers = std::min(thread_count(), total);
    if (workers <= 1 || total < 32) {
        for (int i = begin; i < end; ++i) fn(i);
        return;
    }

    std::exception_ptr first_error = nullptr;
    std::atomic<bool> failed{false};
    auto run_block = [&](int lo, int hi) {
        try {
            for (int i = lo; i < hi; ++i) fn(i);
        } catch (...) {
            bool expected = false;
            if (failed.compare_exchange_strong(expected, true)) first_error = std::current_exception();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    const int chunk = (total + workers - 1) / workers;
    int lo = begin;
    for (int w = 0; w < workers - 1 && lo < end; ++w) {
        int hi = std::min(lo + chunk, end);
        pool.emplace_back(run_block, lo, hi);
        lo = hi;
    }
    run_block(lo, end);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace knotkit
