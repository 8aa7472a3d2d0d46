#pragma once

#include <cstddef>
#include <functional>

namespace prbdim {

// Resolves a worker count: `requested` if nonzero, else PRBDIM_THREADS, else
// the hardware concurrency (at least 1).
std::size_t resolve_threads(std::size_t requested);

// Calls body(i) for i in [0, count) on up to `threads` workers. Each index is
// visited exactly once; callers write results into index-owned slots so the
// outcome does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace prbdim
