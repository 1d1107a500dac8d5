#pragma once

#include <cstddef>
#include <functional>

namespace extint {

/// Worker cap for kernels and experiments. Results never depend on it.
struct ExecPolicy {
  unsigned threads = 1;  // 0 = hardware concurrency
};

unsigned resolve_threads(unsigned requested);

/// Runs fn(0), ..., fn(tasks - 1) on up to `threads` workers. Each task must
/// write only to its own outputs. The first exception thrown is rethrown.
void parallel_for(std::size_t tasks, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace extint
