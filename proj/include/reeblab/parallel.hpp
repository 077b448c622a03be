#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace reeblab {

inline int default_jobs() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(i) for i in [0, count) on a small worker pool. Work items must be
// independent; callers keep determinism by writing results into slot i only.
template <typename Fn>
void parallel_for(std::size_t count, const Fn& fn, int jobs = 0) {
    if (jobs <= 0) jobs = default_jobs();
    if (jobs == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int n = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
    pool.reserve(n);
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace reeblab
