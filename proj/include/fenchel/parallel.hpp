#pragma once

#include <cstddef>
#include <functional>

namespace fenchel {

/// Upper bound on worker threads used by parallel_for (default 1).
void set_max_threads(int n);
int max_threads();

/// Calls fn(i) for i in [0, n), possibly concurrently. Callers write results
/// into slot i, so the outcome never depends on scheduling. The first
/// exception thrown by any call is rethrown.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

}  // namespace fenchel
