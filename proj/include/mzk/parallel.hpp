#pragma once

#include <cstddef>
#include <functional>

namespace mzk {

// Caps worker threads used by parallel_for. 0 restores the hardware default.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs fn(i) for every i in [0, n). Indices are split into contiguous
// chunks, one per worker; nested calls run serially. Callers write results
// into per-index slots, so output never depends on the worker count.
// The exception from the lowest failing chunk is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace mzk
