#pragma once

#include <cstdint>
#include <functional>

namespace ngmeet {

// Worker count for parallel_for: NGMEET_THREADS if set, else hardware
// concurrency. Always at least 1.
int worker_count();

// Runs fn(i) for i in [0, n). Each index must write only to its own output
// slot; the partition is static, so results never depend on the worker
// count or scheduling.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

}  // namespace ngmeet
