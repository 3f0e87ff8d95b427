#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace helix::numerics {

/// Worker count used by parallel_for. 0 or 1 means serial.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls body(i) for every i in [0, n). Each index must write only its own
/// output slot; callers reduce afterwards in index order, so results do not
/// depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Pairwise (cascade) summation; fixed order, O(eps log n) error growth.
double pairwise_sum(std::span<const double> v);

}  // namespace helix::numerics
