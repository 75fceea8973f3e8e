#pragma once

#include <cstddef>
#include <functional>

namespace bcos {

// 0 restores the default (hardware concurrency, or the BCF_THREADS env var).
void set_threads(int n);
int thread_count();

// Runs fn(i) for i in [0, n). Work is partitioned statically; each index is
// executed exactly once and nested calls degrade to serial execution, so
// results never depend on scheduling.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

}  // namespace bcos
