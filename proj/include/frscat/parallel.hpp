#pragma once

#include <cstddef>
#include <functional>

namespace frscat {

/// Number of workers used by parallel_for: the FRSC_THREADS environment
/// variable when set (minimum 1), otherwise all hardware threads. Read on
/// every call so tests can flip it at runtime.
int worker_count();

/// Runs fn(i) for i in [0, n). Work is split into contiguous chunks, one per
/// worker; fn must write only to slots owned by its index so that results do
/// not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace frscat
