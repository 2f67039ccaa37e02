#pragma once

#include <functional>

namespace knotkit {

/// Global worker cap. 0 (default) means "use all hardware threads".
void set_thread_count(int k);
int thread_count();

/// Runs fn(i) for i in [begin, end) split into contiguous blocks, one per worker.
/// Each index must write only its own output slot; reductions are the caller's
/// job and must be done in index order so results do not depend on the worker
/// count. Small ranges run inline.
void parallel_for(int begin, int end, const std::function<void(int)>& fn);

} // namespace knotkit
