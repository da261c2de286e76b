#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace utamp {

template <typename Scalar> using Vec3T = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar> using Mat3T = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar> using Mat4T = Eigen::Matrix<Scalar, 4, 4>;

using Vec3 = Vec3T<double>;
using RotMatrix = Mat3T<double>;

inline constexpr double kPi = std::numbers::pi;

/// Name of the global reference frame {r}.
inline const std::string kWorldFrame = "world";

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised by matrix_to_rpy when pitch is at +-pi/2 and roll/yaw are coupled.
struct GimbalLock : GeometryError {
  GimbalLock() : GeometryError("gimbal lock: roll and yaw are not separable") {}
};

struct FrameMismatch : GeometryError {
  FrameMismatch(const std::string& expected, const std::string& got)
      : GeometryError("frame mismatch: child pose is expressed in '" + got +
                      "' but parent pose locates '" + expected + "'") {}
};

/// Roll (about x), pitch (about y), yaw (about z), radians, "XYZ" sequence.
template <typename Scalar> struct RpyT {
  Scalar roll{0};
  Scalar pitch{0};
  Scalar yaw{0};
};
using Rpy = RpyT<double>;

/// Wraps an angle into (-pi, pi].
template <typename Scalar> Scalar normalize_angle(Scalar a) {
  const Scalar two_pi = Scalar(2) * Scalar(kPi);
  a = std::remainder(a, two_pi);  // [-pi, pi]
  if (a <= -Scalar(kPi)) a += two_pi;
  return a;
}

/// Angle equality modulo 2*pi; +pi and -pi compare equal.
template <typename Scalar>
bool angles_equal(Scalar a, Scalar b, Scalar tol = Scalar(1e-9)) {
  return std::abs(std::remainder(a - b, Scalar(2) * Scalar(kPi))) <= tol;
}

template <typename Scalar>
bool rpy_equal(const RpyT<Scalar>& a, const RpyT<Scalar>& b, Scalar tol = Scalar(1e-9)) {
  return angles_equal(a.roll, b.roll, tol) && angles_equal(a.pitch, b.pitch, tol) &&
         angles_equal(a.yaw, b.yaw, tol);
}

template <typename Scalar> Mat3T<Scalar> rot_x(Scalar g) {
  const Scalar c = std::cos(g), s = std::sin(g);
  Mat3T<Scalar> m;
  m << 1, 0, 0, 0, c, -s, 0, s, c;
  return m;
}

template <typename Scalar> Mat3T<Scalar> rot_y(Scalar b) {
  const Scalar c = std::cos(b), s = std::sin(b);
  Mat3T<Scalar> m;
  m << c, 0, s, 0, 1, 0, -s, 0, c;
  return m;
}

template <typename Scalar> Mat3T<Scalar> rot_z(Scalar a) {
  const Scalar c = std::cos(a), s = std::sin(a);
  Mat3T<Scalar> m;
  m << c, -s, 0, s, c, 0, 0, 0, 1;
  return m;
}

/// R = Rz(yaw) * Ry(pitch) * Rx(roll).
template <typename Scalar> Mat3T<Scalar> rpy_to_matrix(const RpyT<Scalar>& w) {
  return rot_z(w.yaw) * rot_y(w.pitch) * rot_x(w.roll);
}

template <typename Scalar>
inline constexpr Scalar kGimbalThreshold = Scalar(1e-9);

/// Inverse of rpy_to_matrix away from gimbal lock. Throws GimbalLock when
/// sqrt(r32^2 + r33^2) falls below 1e-9.
template <typename Scalar> RpyT<Scalar> matrix_to_rpy(const Mat3T<Scalar>& r) {
  const Scalar cos_pitch = std::hypot(r(2, 1), r(2, 2));
  if (cos_pitch < kGimbalThreshold<Scalar>) throw GimbalLock();
  RpyT<Scalar> w;
  w.yaw = normalize_angle(std::atan2(r(1, 0), r(0, 0)));
  w.pitch = normalize_angle(std::atan2(-r(2, 0), cos_pitch));
  w.roll = normalize_angle(std::atan2(r(2, 1), r(2, 2)));
  return w;
}

/// Same as matrix_to_rpy, but at gimbal lock sets roll = 0 and folds the
/// coupled rotation into yaw.
template <typename Scalar>
RpyT<Scalar> matrix_to_rpy_canonical(const Mat3T<Scalar>& r) {
  const Scalar cos_pitch = std::hypot(r(2, 1), r(2, 2));
  if (cos_pitch >= kGimbalThreshold<Scalar>) return matrix_to_rpy(r);
  RpyT<Scalar> w;
  w.roll = 0;
  w.pitch = r(2, 0) < 0 ? Scalar(kPi) / 2 : -Scalar(kPi) / 2;
  // With roll = 0 both branches reduce to r12 = -sin(yaw), r22 = cos(yaw).
  w.yaw = normalize_angle(std::atan2(-r(0, 1), r(1, 1)));
  return w;
}

template <typename Scalar> struct BBoxT {
  Scalar dx{0};
  Scalar dy{0};
  Scalar dz{0};

  Vec3T<Scalar> extents() const { return {dx, dy, dz}; }
  Vec3T<Scalar> half() const { return extents() / Scalar(2); }
  Scalar operator[](int axis) const { return axis == 0 ? dx : (axis == 1 ? dy : dz); }
  bool positive() const { return dx > 0 && dy > 0 && dz > 0; }
};
using BBox = BBoxT<double>;

/// Rigid pose of frame `id` expressed in frame `frame`. An empty frame tag
/// is a wildcard that chains with anything.
template <typename Scalar> struct PoseT {
  Vec3T<Scalar> position = Vec3T<Scalar>::Zero();
  RpyT<Scalar> orientation{};
  std::string frame;
  std::string id;

  PoseT() = default;
  PoseT(Vec3T<Scalar> p, RpyT<Scalar> w, std::string frame_ = {}, std::string id_ = {})
      : position(std::move(p)), orientation(w), frame(std::move(frame_)), id(std::move(id_)) {}

  static PoseT identity() { return PoseT(); }
  static PoseT translation(const Vec3T<Scalar>& t) { return PoseT(t, {}); }

  Mat3T<Scalar> rotation() const { return rpy_to_matrix(orientation); }

  Mat4T<Scalar> homogeneous() const {
    Mat4T<Scalar> m = Mat4T<Scalar>::Identity();
    m.template topLeftCorner<3, 3>() = rotation();
    m.template topRightCorner<3, 1>() = position;
    return m;
  }

  /// Maps a point expressed in this pose's frame into the parent frame.
  Vec3T<Scalar> transform(const Vec3T<Scalar>& local) const {
    return position + rotation() * local;
  }
};
using Pose = PoseT<double>;

/// parent * child. Position = p_parent + R_parent p_child.
template <typename Scalar>
PoseT<Scalar> compose(const PoseT<Scalar>& parent, const PoseT<Scalar>& child) {
  if (!child.frame.empty() && !parent.id.empty() && child.frame != parent.id)
    throw FrameMismatch(parent.id, child.frame);
  const Mat3T<Scalar> rp = parent.rotation();
  PoseT<Scalar> out;
  out.position = parent.position + rp * child.position;
  out.orientation = matrix_to_rpy_canonical<Scalar>(rp * child.rotation());
  out.frame = parent.frame;
  out.id = child.id;
  return out;
}

template <typename Scalar> PoseT<Scalar> invert(const PoseT<Scalar>& p) {
  const Mat3T<Scalar> rt = p.rotation().transpose();
  PoseT<Scalar> out;
  out.position = -(rt * p.position);
  out.orientation = matrix_to_rpy_canonical<Scalar>(rt);
  out.frame = p.id;
  out.id = p.frame;
  return out;
}

template <typename Scalar>
bool poses_close(const PoseT<Scalar>& a, const PoseT<Scalar>& b, Scalar tol = Scalar(1e-9)) {
  return (a.position - b.position).cwiseAbs().maxCoeff() <= tol &&
         (a.rotation() - b.rotation()).cwiseAbs().maxCoeff() <= tol;
}

/// Slack applied to the closed containment interval so that points placed
/// exactly on a face survive floating-point round-off.
inline constexpr double kContainmentTolerance = 1e-9;

/// Closed containment test of a world point in an oriented box.
template <typename Scalar>
bool obb_contains_point(const PoseT<Scalar>& box_pose, const BBoxT<Scalar>& size,
                        const Vec3T<Scalar>& point,
                        Scalar tol = Scalar(kContainmentTolerance)) {
  const Vec3T<Scalar> local = box_pose.rotation().transpose() * (point - box_pose.position);
  const Vec3T<Scalar> half = size.half();
  for (int i = 0; i < 3; ++i)
    if (std::abs(local[i]) > half[i] + tol) return false;
  return true;
}

template <typename Scalar> struct OrientedBoxT {
  PoseT<Scalar> pose;
  BBoxT<Scalar> size;
};
using OrientedBox = OrientedBoxT<double>;

/// Separating-axis test over the 15 candidate axes of two oriented boxes.
/// Boxes count as overlapping unless some axis separates them by more than
/// -allowed_penetration (touching boxes overlap when the allowance is 0).
template <typename Scalar>
bool obb_overlap(const OrientedBoxT<Scalar>& a, const OrientedBoxT<Scalar>& b,
                 Scalar allowed_penetration = Scalar(0)) {
  const Mat3T<Scalar> ra = a.pose.rotation();
  const Mat3T<Scalar> rb = b.pose.rotation();
  const Vec3T<Scalar> ea = a.size.half();
  const Vec3T<Scalar> eb = b.size.half();

  // b's axes expressed in a's frame.
  const Mat3T<Scalar> r = ra.transpose() * rb;
  const Mat3T<Scalar> abs_r = r.cwiseAbs().array() + Scalar(1e-12);
  const Vec3T<Scalar> t = ra.transpose() * (b.pose.position - a.pose.position);

  // Edge-edge axes are not normalized; the allowance scales with |L|.
  auto separated = [&](Scalar dist, Scalar radius, Scalar axis_len = Scalar(1)) {
    return dist > radius - allowed_penetration * axis_len;
  };

  for (int i = 0; i < 3; ++i) {
    const Scalar rad = ea[i] + eb.dot(abs_r.row(i).transpose());
    if (separated(std::abs(t[i]), rad)) return false;
  }
  for (int j = 0; j < 3; ++j) {
    const Scalar rad = ea.dot(abs_r.col(j)) + eb[j];
    if (separated(std::abs(t.dot(r.col(j))), rad)) return false;
  }
  for (int i = 0; i < 3; ++i) {
    const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
    for (int j = 0; j < 3; ++j) {
      const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      const Scalar dist = std::abs(t[i2] * r(i1, j) - t[i1] * r(i2, j));
      const Scalar rad = ea[i1] * abs_r(i2, j) + ea[i2] * abs_r(i1, j) +
                         eb[j1] * abs_r(i, j2) + eb[j2] * abs_r(i, j1);
      const Scalar axis_len = std::sqrt(std::max(Scalar(0), Scalar(1) - r(i, j) * r(i, j)));
      if (separated(dist, rad, axis_len)) return false;
    }
  }
  return true;
}

}  // namespace utamp
