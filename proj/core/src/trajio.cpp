#include "trajrobust/trajio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "trajrobust/errors.hpp"

namespace trajrobust {

namespace {

bool parse_double(const std::string& token, double& value) {
  const char* begin = token.c_str();
  char* end = nullptr;
  value = std::strtod(begin, &end);
  return end == begin + token.size() && token.size() > 0;
}

}  // namespace

Trajectory parse_tum(std::istream& in, const std::string& name) {
  struct Row {
    TrajectorySample sample;
    int line;
  };
  std::vector<Row> rows;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream fields(line);
    std::string token;
    double v[8];
    int count = 0;
    while (fields >> token) {
      if (count >= 8) {
        throw ParseError("expected 8 fields, got more", line_no);
      }
      if (!parse_double(token, v[count])) {
        throw ParseError("non-numeric field '" + token + "'", line_no);
      }
      ++count;
    }
    if (count != 8) {
      throw ParseError(
          "expected 8 fields, got " + std::to_string(count), line_no);
    }
    if (!std::isfinite(v[0])) {
      throw ParseError("non-finite timestamp", line_no);
    }
    const double qnorm =
        std::sqrt(v[4] * v[4] + v[5] * v[5] + v[6] * v[6] + v[7] * v[7]);
    if (!(qnorm > 1e-12) || !std::isfinite(qnorm)) {
      throw ParseError("zero-norm quaternion", line_no);
    }
    Row row;
    row.sample.t = v[0];
    row.sample.pose.translation = Eigen::Vector3d(v[1], v[2], v[3]);
    row.sample.pose.rotation = Rotation(v[4], v[5], v[6], v[7]);
    row.line = line_no;
    rows.push_back(std::move(row));
  }

  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a.sample.t < b.sample.t;
  });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (std::abs(rows[i].sample.t - rows[i - 1].sample.t) < 1e-9) {
      throw ParseError("duplicate timestamp " +
                           std::to_string(rows[i].sample.t) +
                           " (also on line " +
                           std::to_string(rows[i - 1].line) + ")",
                       rows[i].line);
    }
  }

  Trajectory traj;
  traj.name = name;
  traj.samples.reserve(rows.size());
  for (auto& row : rows) traj.samples.push_back(std::move(row.sample));
  return traj;
}

Trajectory load_tum(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open trajectory file: " + path);
  }
  try {
    return parse_tum(in, path);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line());
  }
}

void write_tum(const Trajectory& traj, std::ostream& out) {
  out << "# timestamp tx ty tz qx qy qz qw\n";
  char buf[256];
  for (const auto& s : traj.samples) {
    const auto& p = s.pose.translation;
    const Rotation& r = s.pose.rotation;
    std::snprintf(buf, sizeof(buf),
                  "%.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g\n", s.t,
                  p.x(), p.y(), p.z(), r.qx(), r.qy(), r.qz(), r.qw());
    out << buf;
  }
}

void save_tum(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  write_tum(traj, out);
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

AssociationSet associate(const Trajectory& est, const Trajectory& gt,
                         double max_dt) {
  if (!(max_dt > 0.0)) {
    throw std::invalid_argument("associate: max_dt must be positive");
  }

  AssociationSet result;
  result.max_dt = max_dt;

  struct Candidate {
    double dt_abs;
    double gt_t;
    double est_t;
    std::size_t est_index;
    std::size_t gt_index;
  };
  std::vector<Candidate> candidates;

  std::vector<double> gt_times;
  gt_times.reserve(gt.size());
  for (const auto& s : gt.samples) gt_times.push_back(s.t);

  for (std::size_t i = 0; i < est.size(); ++i) {
    const double t = est.samples[i].t;
    const auto lo = std::lower_bound(gt_times.begin(), gt_times.end(),
                                     t - max_dt);
    for (auto it = lo; it != gt_times.end() && *it <= t + max_dt; ++it) {
      const std::size_t j = static_cast<std::size_t>(it - gt_times.begin());
      candidates.push_back({std::abs(t - *it), *it, t, i, j});
    }
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.dt_abs != b.dt_abs) return a.dt_abs < b.dt_abs;
              if (a.gt_t != b.gt_t) return a.gt_t < b.gt_t;
              return a.est_t < b.est_t;
            });

  std::vector<bool> est_used(est.size(), false);
  std::vector<bool> gt_used(gt.size(), false);
  for (const auto& c : candidates) {
    if (est_used[c.est_index] || gt_used[c.gt_index]) continue;
    est_used[c.est_index] = true;
    gt_used[c.gt_index] = true;
    result.pairs.push_back({c.est_index, c.gt_index, c.dt_abs});
  }

  std::sort(result.pairs.begin(), result.pairs.end(),
            [](const Association& a, const Association& b) {
              return a.est_index < b.est_index;
            });
  for (std::size_t i = 0; i < est.size(); ++i) {
    if (!est_used[i]) result.unmatched_est.push_back(i);
  }
  for (std::size_t j = 0; j < gt.size(); ++j) {
    if (!gt_used[j]) result.unmatched_gt.push_back(j);
  }
  return result;
}

double median_spacing(const Trajectory& traj) {
  if (traj.size() < 2) {
    throw InsufficientDataError(
        "median_spacing: need at least 2 samples, have " +
        std::to_string(traj.size()));
  }
  std::vector<double> diffs;
  diffs.reserve(traj.size() - 1);
  for (std::size_t i = 1; i < traj.size(); ++i) {
    diffs.push_back(traj.samples[i].t - traj.samples[i - 1].t);
  }
  const std::size_t mid = diffs.size() / 2;
  std::nth_element(diffs.begin(), diffs.begin() + mid, diffs.end());
  if (diffs.size() % 2 == 1) return diffs[mid];
  const double upper = diffs[mid];
  const double lower = *std::max_element(diffs.begin(), diffs.begin() + mid);
  return 0.5 * (lower + upper);
}

Trajectory resample_uniform(const Trajectory& traj, double dt,
                            double gap_break_factor) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("resample_uniform: dt must be positive");
  }
  if (traj.size() < 2) {
    throw InsufficientDataError(
        "resample_uniform: need at least 2 samples, have " +
        std::to_string(traj.size()));
  }

  const double gap_break = gap_break_factor * dt;
  const double t0 = traj.samples.front().t;
  const double t_last = traj.samples.back().t;
  const double eps = 1e-9 * dt;

  std::vector<bool> break_after(traj.size(), false);
  for (const std::size_t start : traj.segment_starts) {
    if (start > 0 && start < traj.size()) break_after[start - 1] = true;
  }

  Trajectory out;
  out.name = traj.name;
  out.frame = traj.frame;

  std::size_t j = 0;  // bracket: samples[j].t <= g <= samples[j+1].t
  bool pending_break = false;
  for (std::size_t k = 0;; ++k) {
    const double g = t0 + static_cast<double>(k) * dt;
    if (g > t_last + eps) break;

    while (j + 2 < traj.size() && traj.samples[j + 1].t <= g) ++j;
    const TrajectorySample& a = traj.samples[j];
    const TrajectorySample& b = traj.samples[j + 1];
    const double span = b.t - a.t;
    double alpha = span > 0.0 ? (g - a.t) / span : 0.0;
    alpha = std::clamp(alpha, 0.0, 1.0);

    Pose pose;
    if (alpha <= 1e-9) {
      pose = a.pose;
    } else if (alpha >= 1.0 - 1e-9) {
      pose = b.pose;
    } else if (span > gap_break || break_after[j]) {
      pending_break = true;  // never interpolate across a hole
      continue;
    } else {
      pose = pose_interpolate(a.pose, b.pose, alpha);
    }

    if (pending_break || out.samples.empty()) {
      out.segment_starts.push_back(out.samples.size());
      pending_break = false;
    }
    out.samples.push_back({g, pose});
  }
  return out;
}

}  // namespace trajrobust
