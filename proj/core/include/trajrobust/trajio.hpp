#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "trajrobust/trajectory.hpp"

namespace trajrobust {

/**
 * Parse a TUM-format trajectory: one pose per line,
 * "timestamp tx ty tz qx qy qz qw", '#' comments and blank lines skipped.
 *
 * Quaternions are normalized on read, samples are sorted by timestamp.
 * Throws ParseError (with line number) on a wrong field count, a
 * non-numeric field, a zero-norm quaternion, or duplicate timestamps
 * (|dt| < 1e-9, both lines named).
 */
Trajectory parse_tum(std::istream& in, const std::string& name = "");

/// parse_tum from a file path; the path is prepended to any error.
Trajectory load_tum(const std::string& path);

/// Write TUM format with enough digits (%.17g) that reparsing is lossless.
void write_tum(const Trajectory& traj, std::ostream& out);

void save_tum(const Trajectory& traj, const std::string& path);

/// One matched (estimate, ground truth) sample pair.
struct Association {
  std::size_t est_index = 0;
  std::size_t gt_index = 0;
  double dt_abs = 0.0;  // |t_est - t_gt|, seconds
};

struct AssociationSet {
  std::vector<Association> pairs;  // sorted by est_index
  std::vector<std::size_t> unmatched_est;
  std::vector<std::size_t> unmatched_gt;
  double max_dt = 0.0;
};

/**
 * Greedy mutual-nearest timestamp matching. Candidate pairs with
 * |dt| <= max_dt are taken in ascending |dt| order (ties broken by earlier
 * gt timestamp, then earlier est timestamp) while both endpoints are
 * unused. Throws std::invalid_argument for max_dt <= 0.
 */
AssociationSet associate(const Trajectory& est, const Trajectory& gt,
                         double max_dt);

/// Median inter-sample spacing; the default spline grid spacing.
double median_spacing(const Trajectory& traj);

/**
 * Resample onto the uniform grid t0, t0+dt, ... up to the last input
 * timestamp, interpolating poses geodesically between bracketing samples.
 * Input gaps larger than gap_break_factor * dt are not interpolated
 * across; they produce a segment break in the output instead.
 *
 * Throws std::invalid_argument for dt <= 0 and InsufficientDataError for
 * fewer than 2 samples.
 */
Trajectory resample_uniform(const Trajectory& traj, double dt,
                            double gap_break_factor = 10.0);

}  // namespace trajrobust
