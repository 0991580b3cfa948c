#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace mzop {

/// Number of worker threads: explicit request, else MZ_THREADS, else hardware.
inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MZ_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Deterministic parallel map-reduce over items [0, n). Items are grouped into
// fixed-size blocks; threads claim whole blocks; per-block partial results are
// stored by block index and merged sequentially in block order afterwards.
// Results are therefore identical for every thread count.
//
// If process() throws, the exception raised by the lowest item index is
// rethrown on the calling thread (again independent of thread count).
template <class Block, class Process, class Merge>
void blocked_reduce(long n_items, int n_threads, long block_size, Process&& process,
                    Merge&& merge) {
    if (n_items <= 0) return;
    long n_blocks = (n_items + block_size - 1) / block_size;
    std::vector<Block> blocks(static_cast<std::size_t>(n_blocks));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_blocks));

    std::atomic<long> next{0};
    auto worker = [&]() {
        for (;;) {
            long b = next.fetch_add(1);
            if (b >= n_blocks) return;
            long begin = b * block_size;
            long end = std::min(n_items, begin + block_size);
            try {
                for (long i = begin; i < end; ++i)
                    process(blocks[static_cast<std::size_t>(b)], i);
            } catch (...) {
                errors[static_cast<std::size_t>(b)] = std::current_exception();
            }
        }
    };

    long capped = std::min<long>(n_threads > 0 ? n_threads : 1, n_blocks);
    int workers = static_cast<int>(capped > 0 ? capped : 1);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    for (long b = 0; b < n_blocks; ++b) merge(blocks[static_cast<std::size_t>(b)]);
}

}  // namespace mzop
