#pragma once

#include <cstdint>
#include <optional>

#include "trajrobust/spline.hpp"
#include "trajrobust/trajectory.hpp"

namespace trajrobust {

/// Constant-twist screw trajectory T(t) = start * exp(t * xi), with xi
/// assembled from (v, w); v and w are the world-frame rates at t = 0 when
/// start has identity rotation.
struct ScrewSpec {
  Eigen::Vector3d v = Eigen::Vector3d::Zero();  // m/s
  Eigen::Vector3d w = Eigen::Vector3d::Zero();  // rad/s
  double duration = 1.0;                        // seconds
  double rate = 10.0;                           // Hz
  Pose start;
};

/// Generated trajectory plus its closed-form world-frame velocities, used
/// as an independent oracle for the spline derivative path.
struct SynthResult {
  Trajectory trajectory;
  std::vector<VelocitySample> velocities;  // one per sample
};

/// Samples the screw at t = k/rate for k = 0..round(duration*rate).
/// Throws std::invalid_argument on a non-positive duration or rate.
SynthResult gen_screw(const ScrewSpec& spec);

enum class DropoutMode { uniform, contiguous_block };

struct SpikeSpec {
  double t = 0.0;
  Eigen::Vector3d offset = Eigen::Vector3d::Zero();  // meters
};

/**
 * Degradation recipe, deterministic given the seed (mt19937_64; noise via
 * std::normal_distribution, so bit-level reproducibility holds within one
 * standard library build).
 *
 * Order of application: dropout, then pose noise (isotropic Gaussian on
 * translation; uniform-axis, Gaussian-magnitude axis-angle applied on the
 * left of the rotation), then the spike offset on the sample nearest its
 * timestamp.
 */
struct DegradationSpec {
  double dropout_fraction = 0.0;  // [0, 1)
  DropoutMode dropout_mode = DropoutMode::uniform;
  double noise_sigma_trans = 0.0;  // meters
  double noise_sigma_rot = 0.0;    // radians
  std::optional<SpikeSpec> spike;
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument on out-of-range spec fields and
/// InsufficientDataError when dropout would leave fewer than 4 samples.
Trajectory degrade(const Trajectory& traj, const DegradationSpec& spec);

}  // namespace trajrobust
