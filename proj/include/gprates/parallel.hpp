#pragma once

#include <cstddef>
#include <functional>

namespace gprates {

/// Number of worker threads used by batch evaluations. Results never depend on it:
/// work is split into independent entries and reductions are combined in index order.
void set_thread_count(int threads);
int thread_count();

/// Calls body(begin, end) over contiguous chunks of [0, n).
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace gprates
