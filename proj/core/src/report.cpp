#include "trajrobust/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace trajrobust {

namespace {

using ordered_json = nlohmann::ordered_json;

// Round to 9 significant digits so serialization is stable and compact.
double round_sig(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return std::strtod(buf, nullptr);
}

ordered_json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_sig(v);
}

ordered_json curve_to_json(const RobustnessCurve& curve) {
  ordered_json j;
  j["kind"] = curve.kind == CurveKind::linear ? "linear" : "angular";
  j["auc"] = json_number(curve.auc);
  ordered_json points = ordered_json::array();
  for (const auto& p : curve.points) {
    points.push_back({round_sig(p.s), round_sig(p.threshold),
                      round_sig(p.precision), round_sig(p.recall),
                      round_sig(p.f1)});
  }
  j["points"] = std::move(points);
  return j;
}

ordered_json sequence_to_json(const SequenceResult& seq) {
  ordered_json j;
  j["name"] = seq.sequence;
  j["length_m"] = json_number(seq.length_m);
  if (seq.ate) {
    j["ate"] = {{"rmse", json_number(seq.ate->rmse)},
                {"mean", json_number(seq.ate->mean)},
                {"median", json_number(seq.ate->median)},
                {"max", json_number(seq.ate->max)}};
  } else {
    j["ate"] = nullptr;
  }
  if (seq.rpe) {
    j["rpe"] = {{"trans_rmse", json_number(seq.rpe->trans_rmse)},
                {"rot_rmse", json_number(seq.rpe->rot_rmse)},
                {"delta_s", json_number(seq.rpe->delta)}};
  } else {
    j["rpe"] = nullptr;
  }
  j["r_p"] = seq.robustness_valid ? json_number(seq.r_p) : ordered_json(nullptr);
  j["r_r"] = seq.robustness_valid ? json_number(seq.r_r) : ordered_json(nullptr);
  j["curves"] = {{"linear", curve_to_json(seq.linear_curve)},
                 {"angular", curve_to_json(seq.angular_curve)}};
  j["warnings"] = seq.warnings;
  return j;
}

}  // namespace

AggregateResult aggregate(std::vector<SequenceResult> results) {
  if (results.empty()) {
    throw std::invalid_argument("aggregate: empty result list");
  }

  AggregateResult out;
  double ate_sum = 0.0;
  std::size_t ate_count = 0;
  double weight_sum = 0.0;
  double rp_sum = 0.0;
  double rr_sum = 0.0;
  double rp_plain = 0.0;
  double rr_plain = 0.0;
  for (const auto& seq : results) {
    if (seq.ate) {
      ate_sum += seq.ate->rmse;
      ++ate_count;
    }
    weight_sum += seq.length_m;
    rp_sum += seq.length_m * seq.r_p;
    rr_sum += seq.length_m * seq.r_r;
    rp_plain += seq.r_p;
    rr_plain += seq.r_r;
  }
  out.mean_ate = ate_count > 0
                     ? ate_sum / static_cast<double>(ate_count)
                     : std::numeric_limits<double>::quiet_NaN();
  if (weight_sum > 0.0) {
    out.weighted_r_p = rp_sum / weight_sum;
    out.weighted_r_r = rr_sum / weight_sum;
  } else {
    // All-zero lengths: fall back to the unweighted mean.
    out.weighted_r_p = rp_plain / static_cast<double>(results.size());
    out.weighted_r_r = rr_plain / static_cast<double>(results.size());
  }
  out.per_sequence = std::move(results);
  return out;
}

void emit_json(const AggregateResult& result, std::ostream& out) {
  ordered_json j;
  ordered_json sequences = ordered_json::array();
  for (const auto& seq : result.per_sequence) {
    sequences.push_back(sequence_to_json(seq));
  }
  j["sequences"] = std::move(sequences);
  j["summary"] = {{"mean_ate", json_number(result.mean_ate)},
                  {"weighted_r_p", json_number(result.weighted_r_p)},
                  {"weighted_r_r", json_number(result.weighted_r_r)}};
  out << j.dump(2) << '\n';
}

void emit_json_file(const AggregateResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open report file: " + path);
  }
  emit_json(result, out);
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

void emit_curve_csv(const RobustnessCurve& curve, std::ostream& out) {
  out << "s,T,precision,recall,f1\n";
  char buf[192];
  for (const auto& p : curve.points) {
    std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%.9g,%.9g,%.9g\n", p.s,
                  p.threshold, p.precision, p.recall, p.f1);
    out << buf;
  }
}

void emit_curve_csv_file(const RobustnessCurve& curve,
                         const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open curve file: " + path);
  }
  emit_curve_csv(curve, out);
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

}  // namespace trajrobust
