#ifndef CIRCLENS_PARALLEL_HPP
#define CIRCLENS_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace circlens {

// Upper bound on worker threads used by library routines. Defaults to the
// CIRCLENS_THREADS environment variable, else the hardware concurrency.
int thread_cap();
void set_thread_cap(int threads);

// Runs body(i) for i in [0, count) on up to thread_cap() threads. Work is
// split into contiguous blocks; callers write results by index so the
// outcome does not depend on the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace circlens

#endif  // CIRCLENS_PARALLEL_HPP
