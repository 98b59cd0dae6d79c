#pragma once

#include <cstddef>
#include <functional>

namespace hcurve {

/// Caps worker count for every parallel loop in the library. 0 means hardware concurrency.
void set_max_jobs(std::size_t jobs);
std::size_t max_jobs();

/// Runs body(i) for i in [0, count). Work items must be independent; results
/// are written by index so the output never depends on scheduling.
/// The first exception thrown by any item is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace hcurve
