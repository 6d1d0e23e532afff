#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <utility>
#include <vector>

namespace zeck {

// Deterministic map-reduce over [0, count): work is split into fixed-size
// chunks, each chunk reduced into its own accumulator, and the per-chunk
// accumulators merged in chunk order. Chunk boundaries depend only on
// chunk_size, so the result is byte-identical for any worker count as long
// as the merge itself is exact (big-int / rational sums, not floats).
template <class Acc, class PerIndex, class Merge>
Acc chunked_reduce(std::size_t count, unsigned workers, std::size_t chunk_size,
                   Acc zero, PerIndex per_index, Merge merge) {
    if (count == 0) return zero;
    if (chunk_size == 0) chunk_size = 1;
    const std::size_t chunks = (count + chunk_size - 1) / chunk_size;
    std::vector<Acc> partial(chunks, zero);

    auto run_chunk = [&](std::size_t c) {
        const std::size_t lo = c * chunk_size;
        const std::size_t hi = std::min(count, lo + chunk_size);
        for (std::size_t i = lo; i < hi; ++i) per_index(partial[c], i);
    };

    if (workers <= 1 || chunks == 1) {
        for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        const unsigned nthreads =
            static_cast<unsigned>(std::min<std::size_t>(workers, chunks));
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t c = next.fetch_add(1); c < chunks;
                     c = next.fetch_add(1))
                    run_chunk(c);
            });
        }
        for (std::thread& th : pool) th.join();
    }

    Acc total = std::move(partial[0]);
    for (std::size_t c = 1; c < chunks; ++c)
        merge(total, std::move(partial[c]));
    return total;
}

} // namespace zeck
