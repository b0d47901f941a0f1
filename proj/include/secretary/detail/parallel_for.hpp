#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace secretary::detail {

/// Runs fn(i) for i in [0, count) across up to max_threads workers.
/// Work items claim indices from a shared counter; fn must write its result
/// into an i-indexed slot so the output layout is independent of scheduling.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn, unsigned max_threads = 0) {
    if (count == 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (max_threads == 0) max_threads = hw;
    unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(count, std::min(hw, max_threads)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

}  // namespace secretary::detail
