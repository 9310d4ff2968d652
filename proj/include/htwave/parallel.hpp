#pragma once

#include <cstddef>
#include <functional>

namespace htwave {

// Worker count: HTW_THREADS if set and positive, otherwise the hardware
// concurrency.
int thread_count();

// Runs body(i) for i in [0, n). Each index writes only its own output slot,
// so results do not depend on the number of threads. Calls made from inside
// a worker run serially. The exception thrown by the lowest failing index is
// rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace htwave
