#pragma once

#include <cstddef>
#include <functional>

namespace kmgm {

/// Caps the number of worker threads used by parallel_for. 0 restores the
/// default (hardware concurrency).
void set_num_threads(std::size_t count);
std::size_t num_threads();

/// Runs body(i) for i in [begin, end). Each index is handled exactly once;
/// callers must write to disjoint outputs so results do not depend on the
/// thread count. Nested calls run serially on the calling thread.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body);

}  // namespace kmgm
