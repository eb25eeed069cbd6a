#pragma once

#include <cstddef>
#include <functional>

namespace perron {

/// Worker count: PERRON_THREADS when set (>= 1), else hardware concurrency.
unsigned thread_budget();

/// Runs body(i) for i in [0, count). Each index is written by exactly one
/// worker, so results stored by index do not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace perron
