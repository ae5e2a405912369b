#pragma once

#include <cstddef>
#include <functional>

namespace locent {

/// Number of workers to use. requested > 0 wins; otherwise the LOCENT_THREADS
/// environment variable; 0 or unset means hardware concurrency.
int resolve_thread_count(int requested = 0);

/// Calls body(i) for i in [0, count) on up to `threads` workers. Exceptions
/// from the body are rethrown (the one from the lowest index).
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace locent
