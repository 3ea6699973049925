#pragma once

// Chunked fork/join over an index range. Results must be merged by the caller
// in chunk order so output never depends on the thread count.

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace gridsat {

inline void run_chunked(std::uint64_t total, int threads,
                        const std::function<void(std::uint64_t begin, std::uint64_t end, int chunk)>& fn) {
    if (threads < 1) threads = 1;
    std::uint64_t n = static_cast<std::uint64_t>(threads);
    if (n > total) n = total ? total : 1;
    if (n <= 1) {
        fn(0, total, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n);
    std::uint64_t per = total / n, extra = total % n, begin = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        std::uint64_t len = per + (i < extra ? 1 : 0);
        pool.emplace_back(fn, begin, begin + len, static_cast<int>(i));
        begin += len;
    }
    for (auto& t : pool) t.join();
}

}  // namespace gridsat
