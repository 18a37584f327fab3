#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace gossipmf {

/// Worker cap for run-level parallelism: RMF_THREADS if set, otherwise the
/// hardware concurrency. Simulation runs are independent; results must be
/// merged in run index order by the caller.
inline int run_parallelism() {
    if (const char* env = std::getenv("RMF_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Executes body(run) for run in [0, runs) on up to run_parallelism()
/// threads. body must only write to its own run's slot.
inline void parallel_runs(int runs, const std::function<void(int)>& body) {
    const int workers = std::min(run_parallelism(), runs);
    if (workers <= 1) {
        for (int r = 0; r < runs; ++r) body(r);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const int r = next.fetch_add(1);
                if (r >= runs) return;
                body(r);
            }
        });
    for (std::thread& t : pool) t.join();
}

}  // namespace gossipmf
