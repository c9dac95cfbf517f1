#ifndef OPPENHEIM_PARALLEL_HPP
#define OPPENHEIM_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace oppenheim {

/// Runs body(i) for i in [0, n) on up to `workers` threads. Work is split
/// into contiguous blocks; callers write results to slot i so the output
/// does not depend on the worker count. The first exception is rethrown.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body);

/// Worker count to use when the caller passes 0.
unsigned default_workers();

}  // namespace oppenheim

#endif  // OPPENHEIM_PARALLEL_HPP
