#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "trajrobust/geometry.hpp"

namespace trajrobust {

/// One time-stamped pose.
struct TrajectorySample {
  double t = 0.0;  // seconds
  Pose pose;
};

/**
 * Time-stamped pose sequence with strictly increasing timestamps.
 *
 * segment_starts marks indices where a new contiguous segment begins
 * (resampling across a large data gap splits the trajectory instead of
 * interpolating). An empty vector means a single segment starting at 0.
 */
struct Trajectory {
  std::vector<TrajectorySample> samples;
  std::string name;
  std::string frame = "world";
  std::vector<std::size_t> segment_starts;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }

  /// Contiguous segments as [begin, end) index ranges.
  std::vector<std::pair<std::size_t, std::size_t>> segments() const;

  /// Sum of consecutive translation distances (ignores segment breaks).
  double path_length() const;
};

}  // namespace trajrobust
