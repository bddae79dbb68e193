#pragma once

#include <cstddef>
#include <functional>

namespace a1kit {

// Worker count for per-degree fan-out; 0 picks hardware concurrency.
// The A1KIT_THREADS environment variable overrides the default.
void set_thread_count(int n);
int thread_count();

// Runs fn(0..n-1) across the configured workers. Results must be written to
// disjoint slots; output ordering is the caller's responsibility, so runs are
// deterministic regardless of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace a1kit
