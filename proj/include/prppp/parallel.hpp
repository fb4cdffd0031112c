#ifndef PRPPP_PARALLEL_HPP
#define PRPPP_PARALLEL_HPP

#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace prppp {

/// Worker cap: PRPPP_THREADS when set, otherwise the hardware concurrency.
inline int worker_count() {
    if (const char* env = std::getenv("PRPPP_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(i) for i in [0, count). fn must be pure per index; results land
/// in caller-owned slots, so the outcome never depends on scheduling.
template <typename Fn>
void parallel_index(std::size_t count, Fn&& fn) {
    int workers = worker_count();
    if (workers <= 1 || count < 32) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t w = 0; w < n_threads; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += n_threads) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace prppp

#endif
