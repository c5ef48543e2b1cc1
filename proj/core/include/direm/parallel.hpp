#pragma once

#include <cstdint>
#include <functional>

#include "direm/types.hpp"

namespace direm {

/// Number of worker threads used by chunked loops. Reads DIREM_THREADS once;
/// falls back to the hardware concurrency.
int worker_threads();

/// Runs fn(chunk_index, begin, end) over a fixed grid of row chunks.
/// The chunk grid depends only on `total` and `chunk_size`, never on the
/// thread count, so callers that accumulate per-chunk partial results and
/// combine them in chunk order get bitwise-identical output for any number
/// of threads. fn must only write chunk-local or row-disjoint data.
void parallel_chunks(index_t total, index_t chunk_size,
                     const std::function<void(index_t, index_t, index_t)>& fn);

inline index_t chunk_count(index_t total, index_t chunk_size) {
  return (total + chunk_size - 1) / chunk_size;
}

}  // namespace direm
