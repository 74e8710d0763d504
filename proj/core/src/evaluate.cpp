#include "trajrobust/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "trajrobust/errors.hpp"

namespace trajrobust {

namespace {

// Keep only samples with t in [t_begin, t_end], remapping segment starts.
Trajectory crop_time(const Trajectory& traj, double t_begin, double t_end) {
  Trajectory out;
  out.name = traj.name;
  out.frame = traj.frame;

  std::vector<std::size_t> kept_index(traj.samples.size(),
                                      std::size_t(-1));
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const double t = traj.samples[i].t;
    if (t < t_begin || t > t_end) continue;
    kept_index[i] = out.samples.size();
    out.samples.push_back(traj.samples[i]);
  }
  if (!traj.segment_starts.empty() && !out.samples.empty()) {
    for (const std::size_t start : traj.segment_starts) {
      // First kept sample at or after the original segment start.
      for (std::size_t i = start; i < traj.samples.size(); ++i) {
        if (kept_index[i] != std::size_t(-1)) {
          if (out.segment_starts.empty() ||
              out.segment_starts.back() != kept_index[i]) {
            out.segment_starts.push_back(kept_index[i]);
          }
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace

SequenceResult evaluate_sequence(const Trajectory& est, const Trajectory& gt,
                                 const EvalOptions& options) {
  SequenceResult result;
  result.sequence = est.name.empty() ? "sequence" : est.name;
  result.length_m = gt.path_length();

  try {
    result.ate = ate(est, gt, options.max_dt, options.align);
  } catch (const std::exception& e) {
    result.warnings.push_back(std::string("ate unavailable: ") + e.what());
  }
  try {
    result.rpe = rpe(est, gt, options.max_dt, options.rpe_delta);
  } catch (const std::exception& e) {
    result.warnings.push_back(std::string("rpe unavailable: ") + e.what());
  }

  // Shared grid spacing: explicit, or the estimate's median spacing, or
  // the ground truth's when the estimate is too short to have one.
  double dt = options.resample_dt;
  if (!(dt > 0.0)) {
    try {
      dt = median_spacing(est);
    } catch (const InsufficientDataError&) {
      try {
        dt = median_spacing(gt);
      } catch (const InsufficientDataError&) {
        dt = 0.0;
      }
    }
  }

  PiecewiseSpline gt_spline;
  if (dt > 0.0 && gt.size() >= 2) {
    gt_spline =
        PiecewiseSpline::fit(resample_uniform(gt, dt, options.gap_break_factor));
    if (gt_spline.dropped_segments() > 0) {
      result.warnings.push_back(
          "ground truth: " + std::to_string(gt_spline.dropped_segments()) +
          " segment(s) too short for spline fitting");
    }
  }
  if (gt_spline.empty()) {
    result.robustness_valid = false;
    result.warnings.push_back(
        "robustness unavailable: ground truth cannot support a spline");
    return result;
  }

  // Estimate samples outside the ground-truth window have nothing to be
  // judged against; keep a small margin so the spline still covers the
  // ground-truth edges.
  PiecewiseSpline est_spline;
  if (dt > 0.0 && !gt.empty()) {
    const double margin = 2.0 * dt;
    const Trajectory est_cropped = crop_time(
        est, gt.samples.front().t - margin, gt.samples.back().t + margin);
    if (est_cropped.size() >= 2) {
      est_spline = PiecewiseSpline::fit(
          resample_uniform(est_cropped, dt, options.gap_break_factor));
    }
    if (est_spline.dropped_segments() > 0) {
      result.warnings.push_back(
          "estimate: " + std::to_string(est_spline.dropped_segments()) +
          " segment(s) too short for spline fitting");
    }
    if (est_spline.empty()) {
      result.warnings.push_back(
          "estimate cannot support a spline; robustness counts it as "
          "fully uncovered");
    }
  }

  const VelocityErrorSeries series =
      velocity_error_series(est_spline, gt_spline, options.rate);
  result.linear_curve =
      robustness_auc(series.linear, options.n_thresholds, CurveKind::linear);
  result.angular_curve =
      robustness_auc(series.angular, options.n_thresholds, CurveKind::angular);
  result.r_p = result.linear_curve.auc;
  result.r_r = result.angular_curve.auc;

  if (series.linear.gt_total > 0) {
    const double coverage = static_cast<double>(series.linear.covered) /
                            static_cast<double>(series.linear.gt_total);
    if (coverage < 0.999) {
      char buf[96];
      std::snprintf(buf, sizeof(buf),
                    "estimate covers %.1f%% of ground-truth instants",
                    100.0 * coverage);
      result.warnings.emplace_back(buf);
    }
  }
  return result;
}

}  // namespace trajrobust
