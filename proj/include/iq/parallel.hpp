#ifndef IQ_PARALLEL_HPP
#define IQ_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace iq {

// Runs body(i) for i in [0, count) on up to `threads` workers (0 = hardware
// concurrency). Work items must be independent; results should be written to
// pre-sized slots indexed by i so that reductions stay deterministic.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace iq

#endif  // IQ_PARALLEL_HPP
