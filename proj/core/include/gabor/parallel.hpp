#pragma once

#include <cstddef>
#include <functional>

namespace gabor {

/// Caps the number of worker threads used by the operator kernels.
/// n == 0 restores the default (hardware concurrency).
void set_thread_count(std::size_t n);
std::size_t thread_count();
/// The value last passed to set_thread_count (0 = default).
std::size_t thread_count_setting();

/// Runs body(i) for i in [0, count) split into contiguous static chunks.
///
/// Every index is handled by exactly one thread and kernels only write to
/// per-index outputs, so results do not depend on the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace gabor
