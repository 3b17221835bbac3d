#pragma once

#include <cstddef>
#include <functional>

namespace shearbd {

// Worker cap shared by every parallel loop. 0 means hardware concurrency.
void set_thread_limit(unsigned threads);
unsigned thread_limit();

// Runs body(i) for i in [0, count). Work is handed out dynamically, so the
// body must only write to locations owned by index i.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace shearbd
