#pragma once

#include <cstddef>
#include <functional>

namespace apnforge {

// Worker count: `requested` if nonzero, else hardware concurrency; always
// capped by APNFORGE_THREADS when set.
unsigned worker_count(unsigned requested = 0);

// Splits [0, n) into contiguous chunks, one per worker. fn(begin, end, worker).
void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t, std::size_t, unsigned)>& fn);

}  // namespace apnforge
