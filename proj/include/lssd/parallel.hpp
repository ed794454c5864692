#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace lssd {

// Worker-count knob shared by the enumeration/restart sharding helpers.
// 0 means "use hardware concurrency". Reading the LSSD_THREADS environment
// variable is left to the CLI layer.
void set_num_threads(int n);
int num_threads();

// Runs fn(shard_index, lo, hi) over a partition of [0, total) into contiguous
// chunks, one per worker. fn must be safe to run concurrently; shard results
// should be merged deterministically by the caller.
void parallel_shards(std::size_t total,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

} // namespace lssd
