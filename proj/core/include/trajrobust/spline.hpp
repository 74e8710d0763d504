#pragma once

#include <cstddef>
#include <vector>

#include "trajrobust/trajectory.hpp"

namespace trajrobust {

/// Cumulative cubic B-spline basis values at a segment parameter u.
struct BasisVector {
  Eigen::Vector4d b;     // cumulative basis; b[0] == 1 for all u
  Eigen::Vector4d bdot;  // d b / du; bdot[0] == 0
};

/**
 * Cumulative basis b = (1/6) C (1, u, u^2, u^3) and its derivative, with
 * C rows (6,0,0,0), (5,3,-3,1), (1,3,3,-2), (0,0,0,1). The 1/6 factor
 * makes b[0] identically 1, which the cumulative formulation requires
 * (four identical control poses must reproduce that pose).
 *
 * Throws std::domain_error for u outside [0, 1].
 */
BasisVector cumulative_basis(double u);

/// World-frame velocity at a timestamp.
struct VelocitySample {
  double t = 0.0;
  Eigen::Vector3d v_w = Eigen::Vector3d::Zero();  // linear, m/s
  Eigen::Vector3d w_w = Eigen::Vector3d::Zero();  // angular, rad/s
};

/**
 * Cumulative cubic B-spline on SE(3) over uniformly spaced control poses.
 *
 * The trajectory poses are used directly as control poses (approximating
 * spline). With control poses T_0..T_{n-1} at times t_i = t0 + i*dt, the
 * pose for t in segment [t_i, t_{i+1}) is
 *
 *   T(u) = T_{i-1} * exp(b_1(u) xi_i) * exp(b_2(u) xi_{i+1})
 *                  * exp(b_3(u) xi_{i+2}),
 *
 * with u = (t - t_i)/dt and cached twists xi_i = log(T_{i-1}^-1 T_i).
 * Evaluation is defined on the valid span [t_1, t_{n-2}].
 */
class SplineTrajectory {
 public:
  /**
   * Fit over a uniformly spaced trajectory (single segment). Throws
   * std::invalid_argument for a non-uniform grid (use resample_uniform
   * first) and InsufficientDataError for fewer than 4 samples.
   */
  static SplineTrajectory fit(const Trajectory& traj);

  std::size_t control_count() const { return control_.size(); }
  double dt() const { return dt_; }
  double control_time(std::size_t i) const {
    return t0_ + static_cast<double>(i) * dt_;
  }
  const std::vector<Pose>& control_poses() const { return control_; }

  /// Cached control twists; twist(i) = log(T_{i-1}^-1 T_i), i in [1, n).
  const Twist& twist(std::size_t i) const { return twists_[i - 1]; }

  double span_begin() const { return control_time(1); }
  double span_end() const { return control_time(control_.size() - 2); }

  /// Spline pose at t. Throws OutOfSpanError outside the valid span.
  Pose pose_at(double t) const;

  /// Analytic world-frame velocity at t: v_w = dp/dt, w_w = vee(Rdot R^T).
  VelocitySample velocity_at(double t) const;

 private:
  SplineTrajectory() = default;

  static SplineTrajectory fit_range(const std::vector<TrajectorySample>& s,
                                    std::size_t begin, std::size_t end);

  // Segment index and parameter for t; throws OutOfSpanError.
  void locate(double t, std::size_t& seg, double& u) const;

  friend class PiecewiseSpline;

  std::vector<Pose> control_;
  std::vector<Twist> twists_;  // twists_[k] between control k and k+1
  double t0_ = 0.0;
  double dt_ = 0.0;
};

/**
 * Splines fitted independently per trajectory segment. Segments with
 * fewer than 4 poses cannot support a cubic spline and are dropped; the
 * spans between and around pieces count as uncovered.
 */
class PiecewiseSpline {
 public:
  PiecewiseSpline() = default;

  static PiecewiseSpline fit(const Trajectory& traj);

  const std::vector<SplineTrajectory>& pieces() const { return pieces_; }
  std::size_t dropped_segments() const { return dropped_segments_; }
  bool empty() const { return pieces_.empty(); }

  bool covers(double t) const { return piece_at(t) != nullptr; }
  const SplineTrajectory* piece_at(double t) const;

  /// Earliest / latest valid time over all pieces; NaN when empty.
  double span_begin() const;
  double span_end() const;

  Pose pose_at(double t) const;
  VelocitySample velocity_at(double t) const;

 private:
  std::vector<SplineTrajectory> pieces_;  // ascending, disjoint spans
  std::size_t dropped_segments_ = 0;
};

}  // namespace trajrobust
