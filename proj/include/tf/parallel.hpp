#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace tf {

// worker cap from TF_THREADS; defaults to 1 so runs are reproducible unless
// the caller opts in
inline int thread_width() {
    const char* env = std::getenv("TF_THREADS");
    if (!env) return 1;
    int v = std::atoi(env);
    if (v < 1) return 1;
    return v > 64 ? 64 : v;
}

// Invokes fn(i) for i in [0, count) across up to thread_width() workers.
// Callers index into pre-sized storage, so results are position-stable and
// reductions stay byte-deterministic.
template <typename Fn>
void parallel_for(size_t count, Fn fn) {
    int width = thread_width();
    if (width <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    int workers = (int)std::min<size_t>(width, count);
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace tf
