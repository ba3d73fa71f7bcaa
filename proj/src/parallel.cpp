#include "primlat/parallel.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace primlat {

namespace {
std::atomic<unsigned> g_max_threads{0};
}

void set_max_threads(unsigned t) { g_max_threads.store(t); }

unsigned max_threads() {
    unsigned t = g_max_threads.load();
    if (t == 0) {
        t = std::thread::hardware_concurrency();
        if (t == 0) t = 1;
    }
    return t;
}

void parallel_for_chunks(std::uint64_t total, std::uint64_t chunk,
                         const std::function<void(std::uint64_t, std::uint64_t)>& fn) {
    if (total == 0) return;
    if (chunk == 0) chunk = 1;
    const std::uint64_t nchunks = (total + chunk - 1) / chunk;
    unsigned nthreads = max_threads();
    if (nthreads > nchunks) nthreads = static_cast<unsigned>(nchunks);
    if (nthreads <= 1) {
        for (std::uint64_t c = 0; c < nchunks; ++c)
            fn(c * chunk, std::min(total, (c + 1) * chunk));
        return;
    }
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::uint64_t c = next.fetch_add(1);
            if (c >= nchunks) return;
            fn(c * chunk, std::min(total, (c + 1) * chunk));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace primlat
