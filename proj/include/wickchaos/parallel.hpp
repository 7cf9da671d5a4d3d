#pragma once

#include <cstddef>
#include <functional>

namespace wickchaos {

// Worker cap: WICK_CHAOS_THREADS if set (positive integer), otherwise the
// hardware concurrency. Invalid values fall back to 1.
int max_worker_threads();

// Runs f(i) for i in [0, count) on up to max_threads workers. Each index is
// processed exactly once and f must not share mutable state across indices;
// results stay deterministic because callers write to index-addressed slots.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& f,
                  int max_threads = 0);

}  // namespace wickchaos
