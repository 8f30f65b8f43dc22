#pragma once

#include <cstddef>
#include <functional>

namespace fear {

// Worker budget: FEAR_THREADS (clamped to >= 1) when set, otherwise the
// hardware concurrency.
int worker_count();

// Runs fn(0) .. fn(n-1), possibly concurrently. Nested calls degrade to a
// serial loop, as do single-worker budgets. Callers must make fn safe for
// concurrent invocation on distinct indices; results must be written to
// per-index slots so the outcome is independent of scheduling. The first
// exception thrown by any fn is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace fear
