#pragma once

#include <cstddef>
#include <functional>

namespace chargedef {

/// Worker count: CHARGEDEF_THREADS if set and positive, else the hardware concurrency.
int thread_count();

/// Runs body(i) for i in [0, count) on up to thread_count() threads. Each index
/// is handled exactly once; the first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace chargedef
