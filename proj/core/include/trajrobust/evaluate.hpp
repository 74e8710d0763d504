#pragma once

#include "trajrobust/report.hpp"

namespace trajrobust {

struct EvalOptions {
  double max_dt = 0.01;      // association tolerance, seconds
  double resample_dt = 0.0;  // <= 0: auto (median estimate spacing)
  double rate = 10.0;        // velocity evaluation rate, Hz
  std::size_t n_thresholds = 1000;
  double rpe_delta = 1.0;    // seconds
  AlignMode align = AlignMode::rigid;
  double gap_break_factor = 10.0;
};

/**
 * Full single-sequence pipeline: associate (ATE, RPE), resample both
 * trajectories onto a shared uniform grid, fit splines, sample
 * world-frame velocities over the ground-truth span, and sweep the F-1
 * robustness curves.
 *
 * Failures of individual metrics (insufficient overlap, degenerate
 * geometry, too little data) become warnings on the result instead of
 * exceptions; an estimate that covers only part of the ground truth still
 * produces a report with correspondingly low recall.
 */
SequenceResult evaluate_sequence(const Trajectory& est, const Trajectory& gt,
                                 const EvalOptions& options = {});

}  // namespace trajrobust
