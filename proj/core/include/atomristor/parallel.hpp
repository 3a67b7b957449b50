#pragma once

#include <cstddef>
#include <functional>

namespace atomristor {

// Process-wide worker count used by the energy-grid maps. 0 selects
// std::thread::hardware_concurrency().
void set_thread_count(unsigned count);
unsigned thread_count();

// Calls body(i) for every i in [0, n). Work is split into contiguous
// chunks; each index is written by exactly one worker, so callers that
// store per-index results and reduce afterwards get output that does not
// depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace atomristor
