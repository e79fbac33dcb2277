#pragma once

#include <cstddef>
#include <functional>

namespace girg {

/// Name of the environment variable holding the default worker count.
inline constexpr const char* kThreadsEnvVar = "GIRG_THREADS";

/// GIRG_THREADS if set to a positive integer, otherwise the number of
/// hardware threads (at least 1).
unsigned default_thread_count();

/// Runs body(index, worker) for every index in [0, count) on up to `threads`
/// workers, handing out indices dynamically. worker is in [0, threads).
/// Exceptions thrown by the body are rethrown on the calling thread (the
/// first one wins; remaining indices are abandoned).
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t index, unsigned worker)>& body);

}  // namespace girg
