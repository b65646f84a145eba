// parallel.hpp — blocked parallel_for over an index range.  Work items write
// disjoint outputs, so results are identical for any thread count.

#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace spinbath::detail {

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    if (threads == 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(threads > 0 ? threads : 1),
                              count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(begin + chunk, count);
        if (begin >= end) break;
        pool.emplace_back([begin, end, &fn] {
            for (std::size_t i = begin; i < end; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace spinbath::detail
