#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace lhall::detail {

// Contiguous subranges [lo, hi) covering [0, extent), a handful per hardware
// thread when parallel, a single range otherwise. Splitting changes only how
// work is distributed; merged results are identified by range order.
inline std::vector<std::pair<std::int64_t, std::int64_t>> split_range(std::int64_t extent,
                                                                      bool parallel) {
    const unsigned hw = std::thread::hardware_concurrency();
    const std::int64_t want = parallel ? 4 * static_cast<std::int64_t>(hw ? hw : 1) : 1;
    const std::int64_t chunks = std::max<std::int64_t>(1, std::min(extent, want));
    std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
    ranges.reserve(static_cast<std::size_t>(chunks));
    std::int64_t lo = 0;
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::int64_t hi = lo + extent / chunks + (c < extent % chunks ? 1 : 0);
        ranges.emplace_back(lo, hi);
        lo = hi;
    }
    return ranges;
}

// Runs worker(chunk) for chunk = 0..chunks-1 and returns the results in chunk
// order, so the merged output never depends on scheduling. Workers must not
// touch shared mutable state. Exceptions are rethrown for the lowest failing
// chunk index.
template <class Result, class Worker>
std::vector<Result> run_chunks(std::int64_t chunks, bool parallel, Worker&& worker) {
    std::vector<Result> results(static_cast<std::size_t>(chunks));
    const unsigned hw = std::thread::hardware_concurrency();
    const unsigned threads =
        parallel && chunks > 1 ? std::min<unsigned>(hw ? hw : 1, static_cast<unsigned>(chunks)) : 1;

    if (threads <= 1) {
        for (std::int64_t c = 0; c < chunks; ++c)
            results[static_cast<std::size_t>(c)] = worker(c);
        return results;
    }

    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chunks));
    std::atomic<std::int64_t> next{0};
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    const std::int64_t c = next.fetch_add(1, std::memory_order_relaxed);
                    if (c >= chunks)
                        return;
                    try {
                        results[static_cast<std::size_t>(c)] = worker(c);
                    } catch (...) {
                        errors[static_cast<std::size_t>(c)] = std::current_exception();
                    }
                }
            });
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return results;
}

} // namespace lhall::detail
