#pragma once

#include <cstddef>
#include <functional>

namespace seplinf {

// Worker cap: SEPLINF_THREADS if set (min 1), otherwise hardware concurrency.
unsigned worker_count();

// Runs fn(i) for i in [0, n). Work is partitioned across workers; callers that
// need deterministic results write into per-index slots and reduce sequentially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace seplinf
