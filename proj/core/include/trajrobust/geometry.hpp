#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace trajrobust {

/// Skew-symmetric matrix such that skew(v) * u = v x u.
Eigen::Matrix3d skew(const Eigen::Vector3d& v);

/// Inverse of skew() for (near-)antisymmetric matrices: vee(skew(v)) = v.
/// Averages the off-diagonal pairs so small symmetric noise cancels.
Eigen::Vector3d vee(const Eigen::Matrix3d& m);

/**
 * Rotation in SO(3), stored as a unit quaternion.
 *
 * The external contract is a unit quaternion with (x, y, z, w) component
 * order. Every construction path normalizes and canonicalizes the sign so
 * that w >= 0 (with a fixed tie-break at w == 0), which keeps the logarithm
 * single-valued with angle in [0, pi].
 */
class Rotation {
 public:
  /// Identity rotation.
  Rotation() : q_(1.0, 0.0, 0.0, 0.0) {}

  /// From raw components in (x, y, z, w) order; normalizes.
  /// Throws std::invalid_argument on a zero-norm or non-finite quaternion.
  Rotation(double qx, double qy, double qz, double qw);

  static Rotation from_quaternion(const Eigen::Quaterniond& q);
  static Rotation from_matrix(const Eigen::Matrix3d& m);

  double qx() const { return q_.x(); }
  double qy() const { return q_.y(); }
  double qz() const { return q_.z(); }
  double qw() const { return q_.w(); }

  const Eigen::Quaterniond& quaternion() const { return q_; }
  Eigen::Matrix3d matrix() const { return q_.toRotationMatrix(); }

  /// Principal rotation angle in [0, pi].
  double angle() const;

  Rotation operator*(const Rotation& other) const;
  Eigen::Vector3d operator*(const Eigen::Vector3d& v) const { return q_ * v; }
  Rotation inverse() const;

 private:
  struct unchecked_tag {};
  Rotation(const Eigen::Quaterniond& q, unchecked_tag) : q_(q) {}

  static Eigen::Quaterniond canonicalize(Eigen::Quaterniond q);

  Eigen::Quaterniond q_;
};

/// Rigid transform in SE(3).
struct Pose {
  Rotation rotation;
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  Pose operator*(const Pose& other) const {
    return Pose{rotation * other.rotation,
                rotation * other.translation + translation};
  }

  /// Transform a point.
  Eigen::Vector3d operator*(const Eigen::Vector3d& p) const {
    return rotation * p + translation;
  }

  Pose inverse() const {
    const Rotation rinv = rotation.inverse();
    return Pose{rinv, -(rinv * translation)};
  }

  Eigen::Matrix4d matrix() const;
};

/// Element of se(3): translational part rho (m), rotational part phi (rad).
struct Twist {
  Eigen::Vector3d rho = Eigen::Vector3d::Zero();
  Eigen::Vector3d phi = Eigen::Vector3d::Zero();

  Twist operator*(double s) const { return Twist{rho * s, phi * s}; }
};

inline Twist operator*(double s, const Twist& xi) { return xi * s; }

/// Rodrigues rotation about phi/|phi| by |phi| radians, with a series
/// branch below |phi| = 1e-8. Throws std::invalid_argument on non-finite
/// input.
Rotation so3_exp(const Eigen::Vector3d& phi);

/// Principal axis-angle with |result| <= pi; inverse of so3_exp on that
/// domain.
Eigen::Vector3d so3_log(const Rotation& r);

/// Left Jacobian V of SO(3): translation of se3_exp is V(phi) * rho.
Eigen::Matrix3d so3_left_jacobian(const Eigen::Vector3d& phi);

/// Inverse of the left Jacobian. Only valid for |phi| < pi.
Eigen::Matrix3d so3_left_jacobian_inverse(const Eigen::Vector3d& phi);

/// Exponential map se(3) -> SE(3).
Pose se3_exp(const Twist& xi);

/// Logarithm map SE(3) -> se(3). Throws std::domain_error (naming the
/// angle) when the rotation angle is at or beyond pi - 1e-6.
Twist se3_log(const Pose& p);

/// Geodesic interpolation P_a * exp(alpha * log(P_a^-1 * P_b)).
/// Exact for screw motions; alpha outside [0, 1] extrapolates.
Pose pose_interpolate(const Pose& a, const Pose& b, double alpha);

}  // namespace trajrobust
