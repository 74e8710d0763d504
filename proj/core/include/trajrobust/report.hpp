#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trajrobust/metrics.hpp"

namespace trajrobust {

/// Everything measured for one (estimate, ground truth) pair. Metrics
/// that could not be computed are empty optionals with a warning
/// explaining why.
struct SequenceResult {
  std::string sequence;
  double length_m = 0.0;  // ground-truth path length
  std::optional<AteResult> ate;
  std::optional<RpeResult> rpe;
  bool robustness_valid = true;  // false when no ground-truth spline exists
  double r_p = 0.0;
  double r_r = 0.0;
  RobustnessCurve linear_curve;
  RobustnessCurve angular_curve;
  std::vector<std::string> warnings;
};

struct AggregateResult {
  std::vector<SequenceResult> per_sequence;
  double mean_ate = 0.0;      // simple mean over sequences with an ATE
  double weighted_r_p = 0.0;  // length-weighted means
  double weighted_r_r = 0.0;
};

/// Length-weighted robustness means, simple-mean ATE. Throws
/// std::invalid_argument on an empty list.
AggregateResult aggregate(std::vector<SequenceResult> results);

/**
 * Deterministic JSON report: insertion-ordered keys, floats rounded to 9
 * significant digits, unavailable metrics emitted as null.
 *
 * Schema:
 *   {"sequences":[{"name","length_m","ate":{"rmse","mean","median","max"},
 *                  "rpe":{"trans_rmse","rot_rmse","delta_s"},"r_p","r_r",
 *                  "curves":{"linear":{...},"angular":{...}},
 *                  "warnings":[...]}],
 *    "summary":{"mean_ate","weighted_r_p","weighted_r_r"}}
 */
void emit_json(const AggregateResult& result, std::ostream& out);

/// emit_json to a file; I/O failures are reported with the path.
void emit_json_file(const AggregateResult& result, const std::string& path);

/// CSV with header "s,T,precision,recall,f1", one row per sampled point,
/// ascending s.
void emit_curve_csv(const RobustnessCurve& curve, std::ostream& out);

void emit_curve_csv_file(const RobustnessCurve& curve,
                         const std::string& path);

}  // namespace trajrobust
