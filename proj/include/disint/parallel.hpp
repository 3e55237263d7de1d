#pragma once

#include <cstddef>
#include <functional>

namespace disint {

// False when the environment sets NO_PARALLEL=1.
[[nodiscard]] bool parallel_enabled();

// Number of worker threads parallel_for will use.
[[nodiscard]] std::size_t worker_count();

// Calls body(i) for every i in [0, count). Iterations may run concurrently
// and in any order; callers write results into slot i and aggregate
// afterwards in index order, so output never depends on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace disint
