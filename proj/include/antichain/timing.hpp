#pragma once

#include <algorithm>
#include <chrono>
#include <vector>

namespace antichain {

// Median-of-R wall-clock timing of a callable; returns seconds per call of
// one invocation of f. Timings are hardware-dependent by nature, so
// consumers report them rather than asserting on them.
template <class F>
double median_time_seconds(F&& f, int repeats = 31) {
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(repeats));
  for (int r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    f();
    const auto stop = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double>(stop - start).count());
  }
  std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
  return times[times.size() / 2];
}

}  // namespace antichain
