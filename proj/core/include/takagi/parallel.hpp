#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace takagi {

// Worker count: TAKAGI_THREADS if set, otherwise all hardware threads.
int thread_count();

// Splits [0, n) into fixed-size chunks, maps each chunk independently and
// folds the per-chunk results in chunk order. The chunk grid does not depend
// on the worker count, so results are byte-identical for any TAKAGI_THREADS.
template <typename T, typename Map, typename Fold>
T parallel_map_fold(std::size_t n, std::size_t chunk, T init, Map map, Fold fold) {
    if (n == 0) return init;
    std::size_t n_chunks = (n + chunk - 1) / chunk;
    std::vector<T> partial(n_chunks);
    std::atomic<std::size_t> next{0};
    int workers = std::min<std::size_t>(thread_count(), n_chunks);
    auto run = [&] {
        for (;;) {
            std::size_t c = next.fetch_add(1);
            if (c >= n_chunks) break;
            std::size_t lo = c * chunk;
            std::size_t hi = std::min(lo + chunk, n);
            partial[c] = map(lo, hi);
        }
    };
    if (workers <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(run);
        for (auto& th : pool) th.join();
    }
    T acc = init;
    for (auto& part : partial) acc = fold(std::move(acc), std::move(part));
    return acc;
}

template <typename Map>
double parallel_reduce_min(std::size_t n, Map map) {
    std::size_t chunk = std::max<std::size_t>(1, n / 256);
    return parallel_map_fold<double>(
        n, chunk, 1e300, map, [](double a, double b) { return std::min(a, b); });
}

}  // namespace takagi
