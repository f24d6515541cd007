#pragma once

#include <cstddef>
#include <functional>

namespace acmine {

// Splits [0, count) into up to `workers` contiguous chunks and runs
// fn(chunk_index, begin, end) on each, joining before returning. Callers
// merge per-chunk results in chunk-index order, which keeps every output
// bit-identical regardless of the worker count. fn must not throw.
void parallel_chunks(std::size_t count, int workers,
                     const std::function<void(int, std::size_t, std::size_t)>& fn);

int chunk_count(std::size_t count, int workers);

}  // namespace acmine
