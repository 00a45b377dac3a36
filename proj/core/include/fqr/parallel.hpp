#pragma once

#include <functional>

namespace fqr {

/// Worker count: FQ_THREADS if set and positive, hardware concurrency
/// otherwise (FQ_THREADS=0 also means auto).
int worker_count();

/// Runs fn(i) for i in [0, count) across workers. Results must be written
/// by index so the output is independent of scheduling.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace fqr
