#pragma once

#include <cstdint>
#include <functional>

namespace primlat {

// Global cap on worker threads (CLI --threads). 0 means hardware concurrency.
void set_max_threads(unsigned t);
unsigned max_threads();

// Runs fn(begin, end) over a fixed partition of [0, total) into chunks.
// The partition depends only on `total` and `chunk`, never on the thread
// count, so per-chunk results can be merged in chunk order for
// reproducible output regardless of --threads.
void parallel_for_chunks(std::uint64_t total, std::uint64_t chunk,
                         const std::function<void(std::uint64_t, std::uint64_t)>& fn);

}  // namespace primlat
