#include "lssd/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace lssd {

namespace {
std::atomic<int> g_threads{0};
}

void set_num_threads(int n) { g_threads.store(n < 0 ? 0 : n); }

int num_threads() {
    int n = g_threads.load();
    if (n > 0) return n;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_shards(std::size_t total,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    std::size_t workers = static_cast<std::size_t>(num_threads());
    workers = std::max<std::size_t>(1, std::min(workers, total));
    if (workers <= 1 || total <= 1) {
        if (total > 0) fn(0, 0, total);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (total + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, w, lo, hi] { fn(w, lo, hi); });
    }
    for (auto& th : pool) th.join();
}

} // namespace lssd
