#pragma once

#include <cstddef>
#include <functional>

namespace trigprec {

/// Worker count from TRIGPREC_WORKERS, else the hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(0), ..., body(count - 1) on up to `workers` threads (0 means
/// worker_count()). Each index runs exactly once; results must be written to
/// per-index slots so the outcome does not depend on scheduling. The exception
/// thrown for the lowest failing index is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, std::size_t workers = 0);

} // namespace trigprec
