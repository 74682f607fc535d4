// parallel.hpp - deterministic index-parallel loop
#pragma once

#include <cstddef>
#include <functional>

namespace hlouvain {

// Runs body(0..count-1), spread over up to `threads` workers. Each index is
// processed exactly once; results must be written to per-index slots so the
// outcome is identical for any thread count. The first exception thrown by a
// body is rethrown after all workers finish.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace hlouvain
