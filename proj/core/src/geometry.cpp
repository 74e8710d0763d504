#include "trajrobust/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace trajrobust {

namespace {

constexpr double kSmallAngle = 1e-8;

bool finite3(const Eigen::Vector3d& v) {
  return std::isfinite(v.x()) && std::isfinite(v.y()) && std::isfinite(v.z());
}

// (1 - cos t) / t^2 via the half-angle identity, stable for all t.
double cos_coeff(double theta) {
  if (theta < kSmallAngle) return 0.5;
  const double s = std::sin(0.5 * theta);
  return 2.0 * s * s / (theta * theta);
}

// (t - sin t) / t^3. Series below 1e-3 where the direct form cancels.
double sin_coeff(double theta) {
  if (theta < 1e-3) {
    const double t2 = theta * theta;
    return 1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0;
  }
  return (theta - std::sin(theta)) / (theta * theta * theta);
}

// Coefficient of skew^2 in the inverse left Jacobian:
// (1 - t / (2 tan(t/2))) / t^2. Series below 1e-3.
double vinv_coeff(double theta) {
  if (theta < 1e-3) {
    const double t2 = theta * theta;
    return 1.0 / 12.0 + t2 / 720.0 + t2 * t2 / 30240.0;
  }
  return (1.0 - 0.5 * theta / std::tan(0.5 * theta)) / (theta * theta);
}

}  // namespace

Eigen::Matrix3d skew(const Eigen::Vector3d& v) {
  Eigen::Matrix3d s;
  // clang-format off
  s <<     0.0, -v.z(),  v.y(),
         v.z(),    0.0, -v.x(),
        -v.y(),  v.x(),    0.0;
  // clang-format on
  return s;
}

Eigen::Vector3d vee(const Eigen::Matrix3d& m) {
  return 0.5 * Eigen::Vector3d(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0),
                               m(1, 0) - m(0, 1));
}

Eigen::Quaterniond Rotation::canonicalize(Eigen::Quaterniond q) {
  q.normalize();
  bool flip = q.w() < 0.0;
  if (q.w() == 0.0) {
    // Half-turn: pick the representative whose first nonzero vector
    // component is positive, so the log of any half-turn is deterministic.
    if (q.x() != 0.0) {
      flip = q.x() < 0.0;
    } else if (q.y() != 0.0) {
      flip = q.y() < 0.0;
    } else {
      flip = q.z() < 0.0;
    }
  }
  if (flip) q.coeffs() = -q.coeffs();
  return q;
}

Rotation::Rotation(double qx, double qy, double qz, double qw)
    : q_(qw, qx, qy, qz) {
  const double n = q_.norm();
  if (!std::isfinite(n) || n < 1e-12) {
    throw std::invalid_argument("quaternion has zero or non-finite norm");
  }
  q_ = canonicalize(q_);
}

Rotation Rotation::from_quaternion(const Eigen::Quaterniond& q) {
  return Rotation(q.x(), q.y(), q.z(), q.w());
}

Rotation Rotation::from_matrix(const Eigen::Matrix3d& m) {
  return Rotation(canonicalize(Eigen::Quaterniond(m)), unchecked_tag{});
}

double Rotation::angle() const {
  return 2.0 * std::atan2(q_.vec().norm(), std::abs(q_.w()));
}

Rotation Rotation::operator*(const Rotation& other) const {
  return Rotation(canonicalize(q_ * other.q_), unchecked_tag{});
}

Rotation Rotation::inverse() const {
  return Rotation(canonicalize(q_.conjugate()), unchecked_tag{});
}

Eigen::Matrix4d Pose::matrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = rotation.matrix();
  m.topRightCorner<3, 1>() = translation;
  return m;
}

Rotation so3_exp(const Eigen::Vector3d& phi) {
  if (!finite3(phi)) {
    throw std::invalid_argument("so3_exp: non-finite input");
  }
  const double theta = phi.norm();
  if (theta < kSmallAngle) {
    // exp(phi) ~ quaternion (1, phi/2); normalization absorbs the O(theta^2)
    // defect, keeping first-order agreement with I + skew(phi).
    return Rotation(0.5 * phi.x(), 0.5 * phi.y(), 0.5 * phi.z(), 1.0);
  }
  const double half = 0.5 * theta;
  const Eigen::Vector3d v = (std::sin(half) / theta) * phi;
  return Rotation(v.x(), v.y(), v.z(), std::cos(half));
}

Eigen::Vector3d so3_log(const Rotation& r) {
  const Eigen::Quaterniond& q = r.quaternion();
  const double nv = q.vec().norm();
  if (nv < kSmallAngle) {
    // atan2(nv, w)/nv -> 1/w as nv -> 0 (w ~ 1 near identity).
    return 2.0 / q.w() * q.vec();
  }
  const double angle = 2.0 * std::atan2(nv, q.w());
  return (angle / nv) * q.vec();
}

Eigen::Matrix3d so3_left_jacobian(const Eigen::Vector3d& phi) {
  const double theta = phi.norm();
  const Eigen::Matrix3d s = skew(phi);
  return Eigen::Matrix3d::Identity() + cos_coeff(theta) * s +
         sin_coeff(theta) * s * s;
}

Eigen::Matrix3d so3_left_jacobian_inverse(const Eigen::Vector3d& phi) {
  const double theta = phi.norm();
  const Eigen::Matrix3d s = skew(phi);
  return Eigen::Matrix3d::Identity() - 0.5 * s + vinv_coeff(theta) * s * s;
}

Pose se3_exp(const Twist& xi) {
  if (!finite3(xi.rho) || !finite3(xi.phi)) {
    throw std::invalid_argument("se3_exp: non-finite input");
  }
  return Pose{so3_exp(xi.phi), so3_left_jacobian(xi.phi) * xi.rho};
}

Twist se3_log(const Pose& p) {
  const double angle = p.rotation.angle();
  if (angle >= M_PI - 1e-6) {
    throw std::domain_error("se3_log: rotation angle " +
                            std::to_string(angle) +
                            " rad is at or beyond pi - 1e-6");
  }
  const Eigen::Vector3d phi = so3_log(p.rotation);
  return Twist{so3_left_jacobian_inverse(phi) * p.translation, phi};
}

Pose pose_interpolate(const Pose& a, const Pose& b, double alpha) {
  if (alpha == 0.0) return a;
  if (alpha == 1.0) return b;
  return a * se3_exp(se3_log(a.inverse() * b) * alpha);
}

}  // namespace trajrobust
