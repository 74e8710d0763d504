// trajrobust: trajectory evaluation front end.
//
// Subcommands:
//   evaluate  ATE / RPE / velocity-robustness report for est-gt pairs
//   compare   rank several estimates against one ground truth
//   synth     generate screw-motion trajectories and degraded variants

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "trajrobust/errors.hpp"
#include "trajrobust/evaluate.hpp"
#include "trajrobust/synth.hpp"
#include "trajrobust/trajio.hpp"

namespace {

using namespace trajrobust;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitEvalImpossible = 2;

std::string format9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// Write to a file, or stdout for "-".
void write_text(const std::string& destination, const std::string& text) {
  if (destination == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(destination);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + destination);
  }
  out << text;
  if (!out) {
    throw std::runtime_error("write failed: " + destination);
  }
}

std::string sequence_stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

bool sequence_incomplete(const SequenceResult& seq) {
  return !seq.ate || !seq.rpe || !seq.robustness_valid;
}

std::string summary_csv(const AggregateResult& agg) {
  std::string text =
      "name,length_m,ate_rmse,ate_mean,ate_median,ate_max,"
      "rpe_trans_rmse,rpe_rot_rmse,r_p,r_r\n";
  for (const auto& seq : agg.per_sequence) {
    text += seq.sequence + ',' + format9(seq.length_m) + ',';
    if (seq.ate) {
      text += format9(seq.ate->rmse) + ',' + format9(seq.ate->mean) + ',' +
              format9(seq.ate->median) + ',' + format9(seq.ate->max) + ',';
    } else {
      text += ",,,,";
    }
    if (seq.rpe) {
      text += format9(seq.rpe->trans_rmse) + ',' + format9(seq.rpe->rot_rmse) +
              ',';
    } else {
      text += ",,";
    }
    if (seq.robustness_valid) {
      text += format9(seq.r_p) + ',' + format9(seq.r_r);
    } else {
      text += ",";
    }
    text += '\n';
  }
  return text;
}

struct EvaluateArgs {
  std::vector<std::string> est_paths;
  std::vector<std::string> gt_paths;
  EvalOptions options;
  std::string resample_dt = "auto";
  std::string output = "-";
  std::string format = "json";
  std::string curve_out;
};

void apply_resample_dt(const std::string& text, EvalOptions& options) {
  if (text == "auto") {
    options.resample_dt = 0.0;
    return;
  }
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || !(value > 0.0)) {
    throw CLI::ValidationError(
        "--resample-dt must be 'auto' or a positive number");
  }
  options.resample_dt = value;
}

int run_evaluate(const EvaluateArgs& args) {
  if (args.est_paths.size() != args.gt_paths.size()) {
    std::cerr << "error: --est and --gt must be given the same number of "
                 "times (got "
              << args.est_paths.size() << " and " << args.gt_paths.size()
              << ")\n";
    return kExitInputError;
  }

  std::vector<SequenceResult> results;
  for (std::size_t i = 0; i < args.est_paths.size(); ++i) {
    Trajectory est = load_tum(args.est_paths[i]);
    est.name = sequence_stem(args.est_paths[i]);
    const Trajectory gt = load_tum(args.gt_paths[i]);
    results.push_back(evaluate_sequence(est, gt, args.options));
  }

  const AggregateResult agg = aggregate(std::move(results));

  if (!args.curve_out.empty()) {
    for (const auto& seq : agg.per_sequence) {
      const std::string prefix =
          agg.per_sequence.size() == 1 ? args.curve_out
                                       : args.curve_out + "_" + seq.sequence;
      emit_curve_csv_file(seq.linear_curve, prefix + "_linear.csv");
      emit_curve_csv_file(seq.angular_curve, prefix + "_angular.csv");
    }
  }

  if (args.format == "csv") {
    write_text(args.output, summary_csv(agg));
  } else if (args.output == "-") {
    emit_json(agg, std::cout);
  } else {
    emit_json_file(agg, args.output);
  }

  for (const auto& seq : agg.per_sequence) {
    for (const auto& warning : seq.warnings) {
      std::cerr << "warning [" << seq.sequence << "]: " << warning << '\n';
    }
  }
  for (const auto& seq : agg.per_sequence) {
    if (sequence_incomplete(seq)) return kExitEvalImpossible;
  }
  return kExitOk;
}

struct CompareArgs {
  std::vector<std::string> est_paths;
  std::string gt_path;
  EvalOptions options;
  std::string resample_dt = "auto";
  std::string output = "-";
  std::string format = "text";
};

int run_compare(const CompareArgs& args) {
  const Trajectory gt = load_tum(args.gt_path);

  std::vector<SequenceResult> results;
  std::vector<std::string> failures;
  for (const auto& path : args.est_paths) {
    try {
      Trajectory est = load_tum(path);
      est.name = sequence_stem(path);
      results.push_back(evaluate_sequence(est, gt, args.options));
    } catch (const std::exception& e) {
      failures.push_back(path + ": " + e.what());
    }
  }
  if (results.empty()) {
    for (const auto& f : failures) std::cerr << "warning: " << f << '\n';
    std::cerr << "error: no estimate could be evaluated\n";
    return kExitEvalImpossible;
  }

  // Stable sorts keep the input order as the tiebreak.
  std::vector<std::size_t> by_rp(results.size());
  std::iota(by_rp.begin(), by_rp.end(), std::size_t{0});
  std::stable_sort(by_rp.begin(), by_rp.end(),
                   [&](std::size_t a, std::size_t b) {
                     return results[a].r_p > results[b].r_p;
                   });

  std::vector<std::size_t> by_ate;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].ate) by_ate.push_back(i);
  }
  std::stable_sort(by_ate.begin(), by_ate.end(),
                   [&](std::size_t a, std::size_t b) {
                     return results[a].ate->rmse < results[b].ate->rmse;
                   });

  std::string text;
  if (args.format == "json") {
    nlohmann::ordered_json j;
    auto entry = [&](std::size_t i) {
      nlohmann::ordered_json e;
      e["name"] = results[i].sequence;
      e["r_p"] = results[i].r_p;
      e["r_r"] = results[i].r_r;
      if (results[i].ate) {
        e["ate_rmse"] = results[i].ate->rmse;
      } else {
        e["ate_rmse"] = nullptr;
      }
      return e;
    };
    j["ranking_by_r_p"] = nlohmann::ordered_json::array();
    for (const std::size_t i : by_rp) j["ranking_by_r_p"].push_back(entry(i));
    j["ranking_by_ate"] = nlohmann::ordered_json::array();
    for (const std::size_t i : by_ate) j["ranking_by_ate"].push_back(entry(i));
    j["warnings"] = failures;
    text = j.dump(2) + "\n";
  } else {
    text += "Ranking by R_p (descending):\n";
    text += "  rank  R_p        R_r        ATE[m]     estimate\n";
    char line[256];
    for (std::size_t k = 0; k < by_rp.size(); ++k) {
      const auto& r = results[by_rp[k]];
      std::snprintf(line, sizeof(line), "  %-4zu  %-9.6f  %-9.6f  %-9s  %s\n",
                    k + 1, r.r_p, r.r_r,
                    r.ate ? format9(r.ate->rmse).c_str() : "-",
                    r.sequence.c_str());
      text += line;
    }
    text += "\nRanking by ATE (ascending):\n";
    text += "  rank  ATE[m]     R_p        estimate\n";
    for (std::size_t k = 0; k < by_ate.size(); ++k) {
      const auto& r = results[by_ate[k]];
      std::snprintf(line, sizeof(line), "  %-4zu  %-9.6f  %-9.6f  %s\n", k + 1,
                    r.ate->rmse, r.r_p, r.sequence.c_str());
      text += line;
    }
    for (const auto& f : failures) text += "warning: " + f + "\n";
  }
  write_text(args.output, text);

  for (const auto& seq : results) {
    for (const auto& warning : seq.warnings) {
      std::cerr << "warning [" << seq.sequence << "]: " << warning << '\n';
    }
  }
  return kExitOk;
}

struct SynthArgs {
  std::string out_path;
  std::string vel_out;
  std::string in_path;
  std::vector<double> v{0.0, 0.0, 0.0};
  std::vector<double> w{0.0, 0.0, 0.0};
  double duration = 10.0;
  double rate = 10.0;
  std::vector<double> start;
  double dropout = 0.0;
  std::string dropout_mode = "uniform";
  double noise_trans = 0.0;
  double noise_rot = 0.0;
  std::optional<double> spike_t;
  std::vector<double> spike{0.0, 0.0, 0.0};
  std::uint64_t seed = 0;
};

int run_synth(const SynthArgs& args) {
  std::uint64_t seed = args.seed;
  if (const char* env = std::getenv("TRAJROBUST_SEED")) {
    seed = std::strtoull(env, nullptr, 10);
  }

  Trajectory base;
  std::vector<VelocitySample> velocities;
  if (!args.in_path.empty()) {
    if (!args.vel_out.empty()) {
      std::cerr << "error: --vel-out requires a generated screw "
                   "(analytic velocities exist only without --in)\n";
      return kExitInputError;
    }
    base = load_tum(args.in_path);
  } else {
    ScrewSpec spec;
    spec.v = Eigen::Vector3d(args.v[0], args.v[1], args.v[2]);
    spec.w = Eigen::Vector3d(args.w[0], args.w[1], args.w[2]);
    spec.duration = args.duration;
    spec.rate = args.rate;
    if (!args.start.empty()) {
      spec.start.translation =
          Eigen::Vector3d(args.start[0], args.start[1], args.start[2]);
      spec.start.rotation =
          Rotation(args.start[3], args.start[4], args.start[5], args.start[6]);
    }
    SynthResult synth = gen_screw(spec);
    base = std::move(synth.trajectory);
    velocities = std::move(synth.velocities);
  }

  const bool degraded = args.dropout > 0.0 || args.noise_trans > 0.0 ||
                        args.noise_rot > 0.0 || args.spike_t.has_value();
  Trajectory output = base;
  if (degraded) {
    DegradationSpec spec;
    spec.dropout_fraction = args.dropout;
    spec.dropout_mode = args.dropout_mode == "block"
                            ? DropoutMode::contiguous_block
                            : DropoutMode::uniform;
    spec.noise_sigma_trans = args.noise_trans;
    spec.noise_sigma_rot = args.noise_rot;
    if (args.spike_t) {
      spec.spike = SpikeSpec{
          *args.spike_t,
          Eigen::Vector3d(args.spike[0], args.spike[1], args.spike[2])};
    }
    spec.seed = seed;
    output = degrade(base, spec);
  }

  save_tum(output, args.out_path);

  if (!args.vel_out.empty()) {
    // Analytic velocities of the undegraded screw at the surviving
    // timestamps; noise and spikes are pose errors, not motion changes.
    std::ofstream out(args.vel_out);
    if (!out) {
      throw std::runtime_error("cannot open output file: " + args.vel_out);
    }
    out << "t,vx,vy,vz,wx,wy,wz,speed,angular_speed\n";
    std::size_t vi = 0;
    char buf[256];
    for (const auto& s : output.samples) {
      while (vi < velocities.size() && velocities[vi].t < s.t - 1e-12) ++vi;
      if (vi >= velocities.size()) break;
      const VelocitySample& v = velocities[vi];
      std::snprintf(buf, sizeof(buf),
                    "%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n", v.t,
                    v.v_w.x(), v.v_w.y(), v.v_w.z(), v.w_w.x(), v.w_w.y(),
                    v.w_w.z(), v.v_w.norm(), v.w_w.norm());
      out << buf;
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trajectory evaluation: ATE, RPE and velocity-robustness "
               "(R_p / R_r) metrics for SLAM and odometry runs"};
  app.require_subcommand(1);

  const std::map<std::string, AlignMode> align_map{
      {"none", AlignMode::none},
      {"rigid", AlignMode::rigid},
      {"similarity", AlignMode::similarity}};

  EvaluateArgs eval_args;
  CLI::App* eval = app.add_subcommand(
      "evaluate", "Evaluate estimate(s) against ground truth");
  eval->add_option("--est", eval_args.est_paths,
                   "Estimated trajectory (TUM format); repeat with --gt for "
                   "multi-sequence reports")
      ->required();
  eval->add_option("--gt", eval_args.gt_paths,
                   "Ground-truth trajectory (TUM format)")
      ->required();
  eval->add_option("--max-dt", eval_args.options.max_dt,
                   "Association tolerance in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  eval->add_option("--resample-dt", eval_args.resample_dt,
                   "Spline grid spacing in seconds, or 'auto' (median "
                   "estimate spacing)")
      ->capture_default_str();
  eval->add_option("--rate", eval_args.options.rate,
                   "Velocity evaluation rate in Hz")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  eval->add_option("--thresholds", eval_args.options.n_thresholds,
                   "Number of sampled thresholds for the F-1 curve")
      ->check(CLI::Range(std::size_t{2}, std::size_t{10000000}))
      ->capture_default_str();
  eval->add_option("--rpe-delta", eval_args.options.rpe_delta,
                   "RPE window length in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  eval->add_option("--align", eval_args.options.align, "ATE alignment mode")
      ->transform(CLI::CheckedTransformer(align_map, CLI::ignore_case))
      ->default_str("rigid");
  eval->add_option("--output", eval_args.output,
                   "Report destination ('-' for stdout)")
      ->capture_default_str();
  eval->add_option("--format", eval_args.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  eval->add_option("--curve-out", eval_args.curve_out,
                   "Prefix for F-1 curve CSV files "
                   "(<prefix>_linear.csv, <prefix>_angular.csv)");

  CompareArgs cmp_args;
  CLI::App* cmp = app.add_subcommand(
      "compare", "Rank multiple estimates against one ground truth");
  cmp->add_option("--est", cmp_args.est_paths, "Estimated trajectories")
      ->required();
  cmp->add_option("--gt", cmp_args.gt_path, "Ground-truth trajectory")
      ->required();
  cmp->add_option("--max-dt", cmp_args.options.max_dt, "Association tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmp->add_option("--resample-dt", cmp_args.resample_dt,
                  "Spline grid spacing or 'auto'")
      ->capture_default_str();
  cmp->add_option("--rate", cmp_args.options.rate, "Velocity rate in Hz")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmp->add_option("--thresholds", cmp_args.options.n_thresholds,
                  "Sampled thresholds for the F-1 curve")
      ->check(CLI::Range(std::size_t{2}, std::size_t{10000000}))
      ->capture_default_str();
  cmp->add_option("--rpe-delta", cmp_args.options.rpe_delta,
                  "RPE window length in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmp->add_option("--align", cmp_args.options.align, "ATE alignment mode")
      ->transform(CLI::CheckedTransformer(align_map, CLI::ignore_case))
      ->default_str("rigid");
  cmp->add_option("--output", cmp_args.output, "Destination ('-' for stdout)")
      ->capture_default_str();
  cmp->add_option("--format", cmp_args.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  SynthArgs synth_args;
  CLI::App* synth = app.add_subcommand(
      "synth", "Generate screw-motion trajectories and degraded variants");
  synth->add_option("--out", synth_args.out_path, "Output TUM file")
      ->required();
  synth->add_option("--vel-out", synth_args.vel_out,
                    "Analytic world-frame velocity sidecar CSV");
  synth->add_option("--in", synth_args.in_path,
                    "Degrade this TUM file instead of generating a screw");
  synth->add_option("--v", synth_args.v, "Linear rate vx vy vz in m/s")
      ->expected(3);
  synth->add_option("--w", synth_args.w, "Angular rate wx wy wz in rad/s")
      ->expected(3);
  synth->add_option("--duration", synth_args.duration, "Duration in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--rate", synth_args.rate, "Sample rate in Hz")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--start", synth_args.start,
                    "Start pose tx ty tz qx qy qz qw")
      ->expected(7);
  synth->add_option("--dropout", synth_args.dropout,
                    "Fraction of samples to drop, [0, 1)")
      ->check(CLI::Range(0.0, 0.999999))
      ->capture_default_str();
  synth->add_option("--dropout-mode", synth_args.dropout_mode,
                    "Dropout pattern")
      ->check(CLI::IsMember({"uniform", "block"}))
      ->capture_default_str();
  synth->add_option("--noise-trans", synth_args.noise_trans,
                    "Translation noise sigma in meters")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  synth->add_option("--noise-rot", synth_args.noise_rot,
                    "Rotation noise sigma in radians")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  synth->add_option("--spike-t", synth_args.spike_t,
                    "Timestamp of a single pose spike");
  synth->add_option("--spike", synth_args.spike, "Spike offset dx dy dz in m")
      ->expected(3);
  synth->add_option("--seed", synth_args.seed,
                    "RNG seed (TRAJROBUST_SEED overrides)")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval->parsed()) {
      apply_resample_dt(eval_args.resample_dt, eval_args.options);
      return run_evaluate(eval_args);
    }
    if (cmp->parsed()) {
      apply_resample_dt(cmp_args.resample_dt, cmp_args.options);
      return run_compare(cmp_args);
    }
    if (synth->parsed()) {
      return run_synth(synth_args);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
