#include "trajrobust/metrics.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "trajrobust/errors.hpp"

namespace trajrobust {

namespace {

struct Stats {
  double rmse = 0.0;
  double mean = 0.0;
  double median = 0.0;
  double max = 0.0;
};

Stats error_stats(std::vector<double> errors) {
  Stats s;
  if (errors.empty()) return s;
  double sq = 0.0;
  double sum = 0.0;
  for (const double e : errors) {
    sq += e * e;
    sum += e;
    s.max = std::max(s.max, e);
  }
  const double n = static_cast<double>(errors.size());
  s.rmse = std::sqrt(sq / n);
  s.mean = sum / n;
  const std::size_t mid = errors.size() / 2;
  std::nth_element(errors.begin(), errors.begin() + mid, errors.end());
  if (errors.size() % 2 == 1) {
    s.median = errors[mid];
  } else {
    const double upper = errors[mid];
    const double lower = *std::max_element(errors.begin(), errors.begin() + mid);
    s.median = 0.5 * (lower + upper);
  }
  return s;
}

}  // namespace

AlignmentResult umeyama_align(const std::vector<Eigen::Vector3d>& est_points,
                              const std::vector<Eigen::Vector3d>& gt_points,
                              bool with_scale) {
  if (est_points.size() != gt_points.size()) {
    throw std::invalid_argument("umeyama_align: point counts differ");
  }
  const std::size_t n = est_points.size();
  if (n < 3) {
    throw DegenerateGeometryError("umeyama_align: need at least 3 pairs, have " +
                                  std::to_string(n));
  }

  Eigen::Vector3d mean_est = Eigen::Vector3d::Zero();
  Eigen::Vector3d mean_gt = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    mean_est += est_points[i];
    mean_gt += gt_points[i];
  }
  mean_est /= static_cast<double>(n);
  mean_gt /= static_cast<double>(n);

  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  double var_est = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector3d de = est_points[i] - mean_est;
    const Eigen::Vector3d dg = gt_points[i] - mean_gt;
    cov += dg * de.transpose();
    var_est += de.squaredNorm();
  }
  cov /= static_cast<double>(n);
  var_est /= static_cast<double>(n);

  Eigen::JacobiSVD<Eigen::Matrix3d> svd(
      cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector3d sv = svd.singularValues();
  if (!(sv(0) > 0.0) || sv(1) <= 1e-9 * sv(0)) {
    throw DegenerateGeometryError(
        "umeyama_align: degenerate geometry (covariance rank < 2)");
  }

  Eigen::Vector3d sign_fix = Eigen::Vector3d::Ones();
  if (svd.matrixU().determinant() * svd.matrixV().determinant() < 0.0) {
    sign_fix(2) = -1.0;
  }
  const Eigen::Matrix3d rot = svd.matrixU() * sign_fix.asDiagonal() *
                              svd.matrixV().transpose();

  AlignmentResult result;
  result.scale = with_scale ? sv.dot(sign_fix) / var_est : 1.0;
  result.transform.rotation = Rotation::from_matrix(rot);
  result.transform.translation =
      mean_gt - result.scale * (rot * mean_est);

  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector3d mapped =
        result.scale * (result.transform.rotation * est_points[i]) +
        result.transform.translation;
    sq += (gt_points[i] - mapped).squaredNorm();
  }
  result.residual_rmse = std::sqrt(sq / static_cast<double>(n));
  return result;
}

AteResult ate(const Trajectory& est, const Trajectory& gt, double max_dt,
              AlignMode align) {
  const AssociationSet assoc = associate(est, gt, max_dt);
  const std::size_t required = (align == AlignMode::none) ? 1 : 3;
  if (assoc.pairs.size() < required) {
    throw InsufficientOverlapError("ate: too few associated pairs",
                                   assoc.pairs.size());
  }

  std::vector<Eigen::Vector3d> est_pts;
  std::vector<Eigen::Vector3d> gt_pts;
  est_pts.reserve(assoc.pairs.size());
  gt_pts.reserve(assoc.pairs.size());
  for (const auto& pair : assoc.pairs) {
    est_pts.push_back(est.samples[pair.est_index].pose.translation);
    gt_pts.push_back(gt.samples[pair.gt_index].pose.translation);
  }

  AteResult result;
  result.pair_count = assoc.pairs.size();
  if (align != AlignMode::none) {
    result.alignment =
        umeyama_align(est_pts, gt_pts, align == AlignMode::similarity);
  }

  result.errors.reserve(est_pts.size());
  for (std::size_t i = 0; i < est_pts.size(); ++i) {
    const Eigen::Vector3d mapped =
        result.alignment.scale *
            (result.alignment.transform.rotation * est_pts[i]) +
        result.alignment.transform.translation;
    result.errors.push_back((gt_pts[i] - mapped).norm());
  }

  const Stats stats = error_stats(result.errors);
  result.rmse = stats.rmse;
  result.mean = stats.mean;
  result.median = stats.median;
  result.max = stats.max;
  return result;
}

RpeResult rpe(const Trajectory& est, const Trajectory& gt, double max_dt,
              double delta) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("rpe: delta must be positive");
  }
  const AssociationSet assoc = associate(est, gt, max_dt);
  if (assoc.pairs.size() < 2) {
    throw InsufficientOverlapError("rpe: too few associated pairs",
                                   assoc.pairs.size());
  }

  // Window bases ordered by ground-truth time.
  std::vector<std::size_t> order(assoc.pairs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return gt.samples[assoc.pairs[a].gt_index].t <
           gt.samples[assoc.pairs[b].gt_index].t;
  });
  std::vector<double> gt_times(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    gt_times[k] = gt.samples[assoc.pairs[order[k]].gt_index].t;
  }

  RpeResult result;
  result.delta = delta;
  for (std::size_t a = 0; a < order.size(); ++a) {
    const double target = gt_times[a] + delta;
    auto it = std::lower_bound(gt_times.begin() + a + 1, gt_times.end(),
                               target);
    std::size_t b = order.size();  // invalid
    double best = std::numeric_limits<double>::infinity();
    if (it != gt_times.end()) {
      const auto idx = static_cast<std::size_t>(it - gt_times.begin());
      best = std::abs(gt_times[idx] - target);
      b = idx;
    }
    if (it != gt_times.begin() + a + 1) {
      const auto idx = static_cast<std::size_t>(it - gt_times.begin()) - 1;
      const double d = std::abs(gt_times[idx] - target);
      if (d < best) {
        best = d;
        b = idx;
      }
    }
    if (b >= order.size() || best > 0.2 * delta) continue;

    const Association& pa = assoc.pairs[order[a]];
    const Association& pb = assoc.pairs[order[b]];
    const Pose gt_rel = gt.samples[pa.gt_index].pose.inverse() *
                        gt.samples[pb.gt_index].pose;
    const Pose est_rel = est.samples[pa.est_index].pose.inverse() *
                         est.samples[pb.est_index].pose;
    const Pose err = gt_rel.inverse() * est_rel;
    result.errors.emplace_back(err.translation.norm(), err.rotation.angle());
  }

  if (result.errors.empty()) {
    throw InsufficientOverlapError(
        "rpe: no window matches delta=" + std::to_string(delta),
        assoc.pairs.size());
  }

  double sq_t = 0.0;
  double sq_r = 0.0;
  for (const auto& [et, er] : result.errors) {
    sq_t += et * et;
    sq_r += er * er;
  }
  const double n = static_cast<double>(result.errors.size());
  result.trans_rmse = std::sqrt(sq_t / n);
  result.rot_rmse = std::sqrt(sq_r / n);
  result.window_count = result.errors.size();
  return result;
}

VelocityErrorSeries velocity_error_series(const PiecewiseSpline& est,
                                          const PiecewiseSpline& gt,
                                          double rate) {
  if (!(rate > 0.0)) {
    throw std::invalid_argument("velocity_error_series: rate must be positive");
  }
  VelocityErrorSeries out;
  if (gt.empty()) return out;

  const double begin = gt.span_begin();
  const double end = gt.span_end();
  const double step = 1.0 / rate;
  const double eps = 1e-9 * step;

  for (std::size_t k = 0;; ++k) {
    const double t = begin + static_cast<double>(k) * step;
    if (t > end + eps) break;
    const SplineTrajectory* gt_piece = gt.piece_at(t);
    if (gt_piece == nullptr) continue;  // hole in ground truth: not judgeable

    ++out.linear.gt_total;
    ++out.angular.gt_total;

    const SplineTrajectory* est_piece = est.piece_at(t);
    if (est_piece == nullptr) continue;  // uncovered: recall loss

    const VelocitySample vg = gt_piece->velocity_at(t);
    const VelocitySample ve = est_piece->velocity_at(t);
    out.linear.samples.emplace_back(t, (vg.v_w - ve.v_w).norm());
    out.angular.samples.emplace_back(t, (vg.w_w - ve.w_w).norm());
    ++out.linear.covered;
    ++out.angular.covered;
  }
  return out;
}

std::pair<double, double> precision_recall(const ErrorSeries& series,
                                           double threshold) {
  if (!(threshold >= 0.0)) {
    throw std::invalid_argument("precision_recall: threshold must be >= 0");
  }
  std::size_t inliers = 0;
  for (const auto& [t, e] : series.samples) {
    if (e < threshold) ++inliers;
  }
  const double p =
      series.samples.empty()
          ? 1.0
          : static_cast<double>(inliers) / static_cast<double>(series.samples.size());
  const double r =
      series.gt_total == 0
          ? 0.0
          : static_cast<double>(inliers) / static_cast<double>(series.gt_total);
  return {p, r};
}

double f1_score(double precision, double recall) {
  if (!(precision >= 0.0 && precision <= 1.0) ||
      !(recall >= 0.0 && recall <= 1.0)) {
    throw std::invalid_argument("f1_score: precision and recall must be in [0, 1]");
  }
  const double sum = precision + recall;
  if (sum == 0.0) return 0.0;
  return 2.0 * precision * recall / sum;
}

RobustnessCurve robustness_auc(const ErrorSeries& series,
                               std::size_t n_thresholds, CurveKind kind) {
  if (n_thresholds < 2) {
    throw std::invalid_argument("robustness_auc: need at least 2 thresholds");
  }

  std::vector<double> errors;
  errors.reserve(series.samples.size());
  for (const auto& [t, e] : series.samples) errors.push_back(e);
  std::sort(errors.begin(), errors.end());
  const auto zeros = static_cast<std::size_t>(
      std::upper_bound(errors.begin(), errors.end(), 0.0) - errors.begin());

  RobustnessCurve curve;
  curve.kind = kind;
  curve.points.reserve(n_thresholds);

  const double n = static_cast<double>(n_thresholds);
  for (std::size_t k = 1; k <= n_thresholds; ++k) {
    CurvePoint pt;
    pt.s = static_cast<double>(k) / n;
    pt.threshold = -std::log(pt.s) / 10.0;

    std::size_t inliers;
    if (k == n_thresholds) {
      // s = 1, T = 0: strict e < T in its T -> 0+ limit, so exact zeros
      // stay inliers and a perfect run scores F1 = 1 across the curve.
      pt.threshold = 0.0;
      inliers = zeros;
    } else {
      inliers = static_cast<std::size_t>(
          std::lower_bound(errors.begin(), errors.end(), pt.threshold) -
          errors.begin());
    }

    pt.precision = errors.empty()
                       ? 1.0
                       : static_cast<double>(inliers) /
                             static_cast<double>(errors.size());
    pt.recall = series.gt_total == 0
                    ? 0.0
                    : static_cast<double>(inliers) /
                          static_cast<double>(series.gt_total);
    pt.f1 = f1_score(pt.precision, pt.recall);
    curve.points.push_back(pt);
  }

  // Trapezoid over s in [0, 1]; the closure at s -> 0+ reuses the F1 of
  // the largest sampled threshold.
  double auc = curve.points.front().f1 * curve.points.front().s;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    auc += 0.5 * (curve.points[i].f1 + curve.points[i - 1].f1) *
           (curve.points[i].s - curve.points[i - 1].s);
  }
  curve.auc = auc;
  return curve;
}

}  // namespace trajrobust
