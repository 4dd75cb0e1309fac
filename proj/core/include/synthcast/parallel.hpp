#pragma once

#include <cstddef>
#include <functional>

namespace synthcast {

/// Calls body(i) for i in [0, n) on up to `workers` threads. The first
/// exception stops further dispatch and is rethrown on the caller.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace synthcast
