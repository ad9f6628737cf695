#pragma once

#include <cstddef>
#include <functional>

namespace regroup {

// Runs fn(i) for every i in [0, count) on up to `threads` workers. fn must
// be safe to call concurrently for distinct indices; callers keep results
// deterministic by writing into per-index slots and reducing in index order.
void parallel_for(size_t count, int threads, const std::function<void(size_t)> &fn);

// Worker count from a thread request: 0 means auto (hardware concurrency).
int resolve_thread_count(int requested);

} // namespace regroup
