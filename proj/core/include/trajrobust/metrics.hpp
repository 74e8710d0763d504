#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "trajrobust/spline.hpp"
#include "trajrobust/trajectory.hpp"
#include "trajrobust/trajio.hpp"

namespace trajrobust {

enum class AlignMode { none, rigid, similarity };

/// Similarity (or rigid) transform mapping estimate frame into the
/// ground-truth frame: gt ~ scale * R * est + t.
struct AlignmentResult {
  Pose transform;
  double scale = 1.0;  // exactly 1.0 in rigid mode
  double residual_rmse = 0.0;
};

/**
 * Closed-form least-squares registration (SVD with reflection guard)
 * minimizing sum |gt_i - (s R est_i + t)|^2. Throws
 * DegenerateGeometryError for fewer than 3 pairs or a cross-covariance of
 * rank < 2.
 */
AlignmentResult umeyama_align(const std::vector<Eigen::Vector3d>& est_points,
                              const std::vector<Eigen::Vector3d>& gt_points,
                              bool with_scale);

struct AteResult {
  double rmse = 0.0;
  double mean = 0.0;
  double median = 0.0;
  double max = 0.0;
  std::vector<double> errors;  // per associated pair, meters
  AlignmentResult alignment;
  std::size_t pair_count = 0;
};

/**
 * Absolute trajectory error: associate by timestamp, optionally align the
 * estimate to the ground truth, then take statistics of the per-pair
 * translational errors. Throws InsufficientOverlapError when association
 * yields fewer than 3 pairs (aligned modes) or none at all.
 */
AteResult ate(const Trajectory& est, const Trajectory& gt, double max_dt,
              AlignMode align);

struct RpeResult {
  double trans_rmse = 0.0;  // meters
  double rot_rmse = 0.0;    // radians
  std::vector<std::pair<double, double>> errors;  // per window (trans, rot)
  double delta = 0.0;
  std::size_t window_count = 0;
};

/**
 * Relative pose error over time windows of length delta (pairing
 * tolerance 0.2*delta): E = (Q_i^-1 Q_j)^-1 (P_i^-1 P_j) per window,
 * RMSE of |trans(E)| and angle(rot(E)). Throws InsufficientOverlapError
 * when no window matches delta.
 */
RpeResult rpe(const Trajectory& est, const Trajectory& gt, double max_dt,
              double delta);

/// Error magnitudes at ground-truth evaluation instants, plus the coverage
/// bookkeeping that feeds recall.
struct ErrorSeries {
  std::vector<std::pair<double, double>> samples;  // (t, e), e >= 0
  std::size_t gt_total = 0;  // ground-truth evaluation instants
  std::size_t covered = 0;   // instants the estimate also covers
};

struct VelocityErrorSeries {
  ErrorSeries linear;   // |v_gt - v_est|, m/s
  ErrorSeries angular;  // |w_gt - w_est|, rad/s
};

/**
 * Sample both splines on a uniform grid at `rate` over the ground-truth
 * valid span. Instants the estimate does not cover still count in
 * gt_total, which is what penalizes incomplete trajectories. An empty
 * overlap yields covered = 0, not an error.
 */
VelocityErrorSeries velocity_error_series(const PiecewiseSpline& est,
                                          const PiecewiseSpline& gt,
                                          double rate);

/**
 * P = |{e < T}| / |samples| (1.0 when there are no samples),
 * R = |{e < T}| / gt_total. Strict inequality.
 */
std::pair<double, double> precision_recall(const ErrorSeries& series,
                                           double threshold);

/// Harmonic mean of precision and recall; 0 when both are 0. Throws
/// std::invalid_argument outside [0, 1].
double f1_score(double precision, double recall);

enum class CurveKind { linear, angular };

struct CurvePoint {
  double s = 0.0;          // mapped threshold exp(-10 T), in (0, 1]
  double threshold = 0.0;  // raw threshold T, m/s or rad/s
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct RobustnessCurve {
  std::vector<CurvePoint> points;  // ascending s
  double auc = 0.0;
  CurveKind kind = CurveKind::linear;
};

/**
 * F-1 curve over thresholds and its area under the curve.
 *
 * The mapped threshold s is sampled uniformly on (0, 1]; each raw
 * threshold is T = -ln(s)/10. The AUC is the trapezoidal integral of F1
 * over s, closed at s -> 0+ with the F1 value of the largest sampled T.
 * At the s = 1 endpoint (T = 0) the strict inlier test e < T is taken in
 * its T -> 0+ limit, i.e. exact zeros count as inliers; everywhere else
 * the inequality is strict.
 *
 * Throws std::invalid_argument for n_thresholds < 2.
 */
RobustnessCurve robustness_auc(const ErrorSeries& series,
                               std::size_t n_thresholds = 1000,
                               CurveKind kind = CurveKind::linear);

}  // namespace trajrobust
