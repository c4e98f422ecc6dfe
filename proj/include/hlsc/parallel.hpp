#pragma once

#include <functional>

namespace hlsc::detail {

/// Thread budget for per-node backups.  Controlled by HOWARD_LSC_THREADS
/// (0 or unset = auto-detect).  Read once per process.
int thread_budget();

/// Runs body(begin, end) over a partition of [0, n).  Chunks are disjoint,
/// so bodies that write only their own index range produce bit-identical
/// results regardless of the thread count.  Small ranges run inline.
void parallel_for(int n, const std::function<void(int, int)>& body);

}  // namespace hlsc::detail
