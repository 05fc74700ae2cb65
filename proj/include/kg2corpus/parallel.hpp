#pragma once
// Block-dynamic parallel loop. Workers pull fixed-size index blocks from an
// atomic counter; callers that need deterministic output must merge worker
// results order-independently (the cycle extractor sorts by canonical key,
// the generators write shard buffers in shard order).

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace kgc {

inline uint32_t effective_threads(uint32_t requested) {
    if (requested > 0) return requested;
    uint32_t hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// fn(worker_index, block_begin, block_end)
template <typename Fn>
void parallel_blocks(uint64_t begin, uint64_t end, uint32_t threads, uint64_t block_size, Fn&& fn) {
    if (end <= begin) return;
    threads = effective_threads(threads);
    uint64_t total = end - begin;
    if (threads <= 1 || total <= block_size) {
        fn(0u, begin, end);
        return;
    }
    std::atomic<uint64_t> next{0};
    uint64_t nblocks = (total + block_size - 1) / block_size;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (uint32_t w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            for (;;) {
                uint64_t b = next.fetch_add(1, std::memory_order_relaxed);
                if (b >= nblocks) break;
                uint64_t lo = begin + b * block_size;
                uint64_t hi = std::min(end, lo + block_size);
                fn(w, lo, hi);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace kgc
