#pragma once

#include <cstddef>
#include <functional>

namespace pinsker {

// Worker count for `tasks` independent tasks: hardware concurrency, capped by
// the PINSKER_THREADS environment variable when set.
int worker_count(std::size_t tasks);

// Runs fn(i) for i in [0, count). Each task must write only to its own output
// slot; callers reduce sequentially afterwards, so results are identical for
// every worker count. The first exception thrown by a task is rethrown here.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace pinsker
