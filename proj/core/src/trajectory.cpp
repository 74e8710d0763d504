#include "trajrobust/trajectory.hpp"

namespace trajrobust {

std::vector<std::pair<std::size_t, std::size_t>> Trajectory::segments() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (samples.empty()) return out;
  if (segment_starts.empty()) {
    out.emplace_back(0, samples.size());
    return out;
  }
  for (std::size_t k = 0; k < segment_starts.size(); ++k) {
    const std::size_t begin = segment_starts[k];
    const std::size_t end =
        (k + 1 < segment_starts.size()) ? segment_starts[k + 1] : samples.size();
    if (begin < end) out.emplace_back(begin, end);
  }
  return out;
}

double Trajectory::path_length() const {
  double length = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    length +=
        (samples[i].pose.translation - samples[i - 1].pose.translation).norm();
  }
  return length;
}

}  // namespace trajrobust
