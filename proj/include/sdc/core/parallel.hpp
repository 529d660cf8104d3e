#pragma once

#include <functional>

namespace sdc {

// Worker count used by the data-parallel operator loops. 0 selects
// std::thread::hardware_concurrency().
void set_thread_count(int count);
int thread_count();

// Calls body(i) for every i in [begin, end), split into contiguous chunks
// across the configured workers. Bodies must only write state owned by i;
// results are then independent of the schedule.
void parallel_for(int begin, int end, const std::function<void(int)>& body);

}  // namespace sdc
