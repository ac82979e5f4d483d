#pragma once

#include <cstddef>
#include <functional>

namespace srelight {

/// Worker count used by the pixel-parallel loops. Defaults to the
/// SRELIGHT_THREADS environment variable, else hardware concurrency.
int thread_count();
void set_thread_count(int n);

/// Calls `fn(i)` for every i in [0, n), split into contiguous chunks over
/// thread_count() workers. Callers must write only to slots owned by `i`,
/// which keeps results independent of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace srelight
