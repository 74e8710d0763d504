#include "trajrobust/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "trajrobust/errors.hpp"

namespace trajrobust {

SynthResult gen_screw(const ScrewSpec& spec) {
  if (!(spec.duration > 0.0)) {
    throw std::invalid_argument("gen_screw: duration must be positive");
  }
  if (!(spec.rate > 0.0)) {
    throw std::invalid_argument("gen_screw: rate must be positive");
  }

  const auto steps =
      static_cast<std::size_t>(std::llround(spec.duration * spec.rate));
  const Twist xi{spec.v, spec.w};

  SynthResult out;
  out.trajectory.name = "screw";
  out.trajectory.samples.reserve(steps + 1);
  out.velocities.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) / spec.rate;
    const Pose pose = spec.start * se3_exp(xi * t);
    out.trajectory.samples.push_back({t, pose});

    // Constant body twist: v_w(t) = R(t) v, w_w(t) = R(t) w.
    VelocitySample vel;
    vel.t = t;
    vel.v_w = pose.rotation * spec.v;
    vel.w_w = pose.rotation * spec.w;
    out.velocities.push_back(vel);
  }
  return out;
}

Trajectory degrade(const Trajectory& traj, const DegradationSpec& spec) {
  if (!(spec.dropout_fraction >= 0.0 && spec.dropout_fraction < 1.0)) {
    throw std::invalid_argument("degrade: dropout_fraction must be in [0, 1)");
  }
  if (spec.noise_sigma_trans < 0.0 || spec.noise_sigma_rot < 0.0) {
    throw std::invalid_argument("degrade: noise sigmas must be >= 0");
  }

  std::mt19937_64 rng(spec.seed);
  const std::size_t n = traj.samples.size();
  const auto n_remove = static_cast<std::size_t>(
      std::floor(spec.dropout_fraction * static_cast<double>(n)));
  if (n - n_remove < 4) {
    throw InsufficientDataError(
        "degrade: dropout would leave fewer than 4 samples (" +
        std::to_string(n - n_remove) + ")");
  }

  std::vector<bool> removed(n, false);
  if (n_remove > 0) {
    if (spec.dropout_mode == DropoutMode::uniform) {
      // Partial Fisher-Yates over the index array.
      std::vector<std::size_t> idx(n);
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      for (std::size_t k = 0; k < n_remove; ++k) {
        std::uniform_int_distribution<std::size_t> pick(k, n - 1);
        std::swap(idx[k], idx[pick(rng)]);
        removed[idx[k]] = true;
      }
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, n - n_remove);
      const std::size_t start = pick(rng);
      std::fill(removed.begin() + start, removed.begin() + start + n_remove,
                true);
    }
  }

  Trajectory out;
  out.name = traj.name;
  out.frame = traj.frame;
  out.samples.reserve(n - n_remove);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (removed[i]) continue;
    TrajectorySample s = traj.samples[i];
    if (spec.noise_sigma_trans > 0.0) {
      s.pose.translation += spec.noise_sigma_trans *
                            Eigen::Vector3d(gauss(rng), gauss(rng), gauss(rng));
    }
    if (spec.noise_sigma_rot > 0.0) {
      Eigen::Vector3d axis;
      do {
        axis = Eigen::Vector3d(gauss(rng), gauss(rng), gauss(rng));
      } while (axis.norm() < 1e-12);
      axis.normalize();
      const double magnitude = spec.noise_sigma_rot * gauss(rng);
      s.pose.rotation = so3_exp(magnitude * axis) * s.pose.rotation;
    }
    out.samples.push_back(std::move(s));
  }

  if (spec.spike) {
    const double t = spec.spike->t;
    auto it = std::lower_bound(
        out.samples.begin(), out.samples.end(), t,
        [](const TrajectorySample& s, double value) { return s.t < value; });
    if (it == out.samples.end() ||
        (it != out.samples.begin() &&
         t - std::prev(it)->t < it->t - t)) {
      --it;
    }
    it->pose.translation += spec.spike->offset;
  }
  return out;
}

}  // namespace trajrobust
