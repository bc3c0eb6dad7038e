#pragma once

#include <cstddef>
#include <functional>

namespace signorini {

/// Number of worker threads used by element loops. Results never depend on it:
/// workers write disjoint per-index slots and reductions run in index order.
void set_worker_count(unsigned workers);
unsigned worker_count();

/// Calls body(i) for every i in [0, n), split into contiguous blocks.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace signorini
