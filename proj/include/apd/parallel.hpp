#pragma once

#include <cstddef>
#include <functional>

namespace apd {

/// Worker cap: APD_THREADS when set to a positive integer, otherwise the machine parallelism.
std::size_t worker_count();

/// Runs body(begin, end) over a static partition of [0, n). Each index is visited exactly once,
/// so callers writing into per-index slots get results independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace apd
