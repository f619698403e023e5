#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace egtsec {

// Calls body(i) for every i in [0, n) on up to `threads` workers. Work is
// split into contiguous blocks; callers write results into slot i only, so
// the outcome does not depend on the thread count. If any call throws, the
// exception from the lowest index is rethrown after all workers finish.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace egtsec
