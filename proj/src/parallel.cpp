#include "fracext/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fracext {

namespace {
std::atomic<int> g_max_threads{0};
}

int max_threads() {
    int n = g_max_threads.load();
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(1, n);
}

void set_max_threads(int n) { g_max_threads.store(n); }

void parallel_for(std::int64_t n_items, const std::function<void(std::int64_t)>& fn) {
    if (n_items <= 0) return;
    const int nt = static_cast<int>(std::min<std::int64_t>(max_threads(), n_items));
    if (nt <= 1) {
        for (std::int64_t i = 0; i < n_items; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> counter{0};
    std::exception_ptr err;
    std::mutex err_mutex;
    auto worker = [&] {
        for (;;) {
            const std::int64_t i = counter.fetch_add(1);
            if (i >= n_items) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mutex);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(nt - 1);
    for (int t = 1; t < nt; ++t) threads.emplace_back(worker);
    worker();
    for (auto& th : threads) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace fracext
