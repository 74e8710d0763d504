#include "trajrobust/spline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "trajrobust/errors.hpp"

namespace trajrobust {

namespace {

// Rows of the cumulative cubic basis matrix, already divided by 6.
const Eigen::Matrix4d kBasisMatrix = [] {
  Eigen::Matrix4d c;
  // clang-format off
  c << 6.0, 0.0,  0.0,  0.0,
       5.0, 3.0, -3.0,  1.0,
       1.0, 3.0,  3.0, -2.0,
       0.0, 0.0,  0.0,  1.0;
  // clang-format on
  return (c / 6.0).eval();
}();

// 4x4 se(3) matrix of a twist.
Eigen::Matrix4d hat4(const Twist& xi) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m.topLeftCorner<3, 3>() = skew(xi.phi);
  m.topRightCorner<3, 1>() = xi.rho;
  return m;
}

}  // namespace

BasisVector cumulative_basis(double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::domain_error("cumulative_basis: u=" + std::to_string(u) +
                            " outside [0, 1]");
  }
  const double u2 = u * u;
  BasisVector out;
  out.b = kBasisMatrix * Eigen::Vector4d(1.0, u, u2, u2 * u);
  out.bdot = kBasisMatrix * Eigen::Vector4d(0.0, 1.0, 2.0 * u, 3.0 * u2);
  return out;
}

SplineTrajectory SplineTrajectory::fit(const Trajectory& traj) {
  return fit_range(traj.samples, 0, traj.samples.size());
}

SplineTrajectory SplineTrajectory::fit_range(
    const std::vector<TrajectorySample>& samples, std::size_t begin,
    std::size_t end) {
  const std::size_t n = end - begin;
  if (n < 4) {
    throw InsufficientDataError("spline fit: need at least 4 poses, have " +
                                std::to_string(n));
  }

  const double t0 = samples[begin].t;
  const double t_last = samples[end - 1].t;
  const double dt = (t_last - t0) / static_cast<double>(n - 1);
  if (!(dt > 0.0)) {
    throw std::invalid_argument("spline fit: timestamps not increasing");
  }
  // Uniformity check with slack for the rounding of large absolute
  // timestamps (epoch-seconds grids cannot be uniform to 1e-9*dt).
  const double tol =
      std::max(1e-9 * dt, 16.0 * std::numeric_limits<double>::epsilon() *
                              std::max(std::abs(t0), std::abs(t_last)));
  for (std::size_t i = 0; i < n; ++i) {
    const double expected = t0 + static_cast<double>(i) * dt;
    if (std::abs(samples[begin + i].t - expected) > tol) {
      throw std::invalid_argument(
          "spline fit: non-uniform timestamp grid at t=" +
          std::to_string(samples[begin + i].t) +
          "; resample with resample_uniform first");
    }
  }

  SplineTrajectory spline;
  spline.t0_ = t0;
  spline.dt_ = dt;
  spline.control_.reserve(n);
  for (std::size_t i = begin; i < end; ++i) {
    spline.control_.push_back(samples[i].pose);
  }
  spline.twists_.reserve(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    spline.twists_.push_back(
        se3_log(spline.control_[i - 1].inverse() * spline.control_[i]));
  }
  return spline;
}

void SplineTrajectory::locate(double t, std::size_t& seg, double& u) const {
  const std::size_t n = control_.size();
  const double eps = 1e-9 * dt_;
  if (t < span_begin() - eps || t > span_end() + eps) {
    throw OutOfSpanError(t, span_begin(), span_end());
  }
  const double s = (t - t0_) / dt_;
  auto i = static_cast<std::ptrdiff_t>(std::floor(s));
  i = std::clamp<std::ptrdiff_t>(i, 1, static_cast<std::ptrdiff_t>(n) - 3);
  seg = static_cast<std::size_t>(i);
  u = std::clamp(s - static_cast<double>(i), 0.0, 1.0);
}

Pose SplineTrajectory::pose_at(double t) const {
  std::size_t seg = 0;
  double u = 0.0;
  locate(t, seg, u);
  const BasisVector basis = cumulative_basis(u);

  Pose pose = control_[seg - 1];
  for (int j = 1; j <= 3; ++j) {
    pose = pose * se3_exp(twists_[seg + j - 2] * basis.b[j]);
  }
  return pose;
}

VelocitySample SplineTrajectory::velocity_at(double t) const {
  std::size_t seg = 0;
  double u = 0.0;
  locate(t, seg, u);
  const BasisVector basis = cumulative_basis(u);

  // Factors A_j = exp(b_j xi_j) and their time derivatives
  // dA_j/dt = (bdot_j / dt) hat(xi_j) A_j (the exponent is a scalar
  // multiple of a fixed matrix, so the factors commute).
  Eigen::Matrix4d factor[3];
  Eigen::Matrix4d dfactor[3];
  for (int j = 1; j <= 3; ++j) {
    const Twist& xi = twists_[seg + j - 2];
    factor[j - 1] = se3_exp(xi * basis.b[j]).matrix();
    dfactor[j - 1] = (basis.bdot[j] / dt_) * hat4(xi) * factor[j - 1];
  }

  const Eigen::Matrix4d base = control_[seg - 1].matrix();
  const Eigen::Matrix4d pose_m = base * factor[0] * factor[1] * factor[2];
  const Eigen::Matrix4d deriv =
      base * (dfactor[0] * factor[1] * factor[2] +
              factor[0] * dfactor[1] * factor[2] +
              factor[0] * factor[1] * dfactor[2]);

  VelocitySample out;
  out.t = t;
  out.v_w = deriv.topRightCorner<3, 1>();
  const Eigen::Matrix3d rot = pose_m.topLeftCorner<3, 3>();
  const Eigen::Matrix3d rot_dot = deriv.topLeftCorner<3, 3>();
  out.w_w = vee(rot_dot * rot.transpose());
  return out;
}

PiecewiseSpline PiecewiseSpline::fit(const Trajectory& traj) {
  PiecewiseSpline out;
  for (const auto& [begin, end] : traj.segments()) {
    if (end - begin < 4) {
      ++out.dropped_segments_;
      continue;
    }
    out.pieces_.push_back(SplineTrajectory::fit_range(traj.samples, begin, end));
  }
  return out;
}

const SplineTrajectory* PiecewiseSpline::piece_at(double t) const {
  // Few pieces in practice; linear scan with early exit.
  for (const auto& piece : pieces_) {
    if (t < piece.span_begin() - 1e-9 * piece.dt()) break;
    if (t <= piece.span_end() + 1e-9 * piece.dt()) return &piece;
  }
  return nullptr;
}

double PiecewiseSpline::span_begin() const {
  if (pieces_.empty()) return std::numeric_limits<double>::quiet_NaN();
  return pieces_.front().span_begin();
}

double PiecewiseSpline::span_end() const {
  if (pieces_.empty()) return std::numeric_limits<double>::quiet_NaN();
  return pieces_.back().span_end();
}

Pose PiecewiseSpline::pose_at(double t) const {
  const SplineTrajectory* piece = piece_at(t);
  if (piece == nullptr) throw OutOfSpanError(t, span_begin(), span_end());
  return piece->pose_at(t);
}

VelocitySample PiecewiseSpline::velocity_at(double t) const {
  const SplineTrajectory* piece = piece_at(t);
  if (piece == nullptr) throw OutOfSpanError(t, span_begin(), span_end());
  return piece->velocity_at(t);
}

}  // namespace trajrobust
