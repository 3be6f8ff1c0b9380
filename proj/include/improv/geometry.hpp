#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <span>
#include <vector>

namespace improv {

using Vec3 = Eigen::Vector3d;
using Quat = Eigen::Quaterniond;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kPoseTolerance = 1e-9;

/// Rigid transform in 3-D: rotation followed by translation.
///
/// The quaternion is kept unit-norm and in canonical sign (w >= 0; if w == 0
/// the first nonzero component of (x, y, z) is >= 0), so equal rotations have
/// identical component representations.
struct Pose {
  Vec3 translation{Vec3::Zero()};
  Quat rotation{Quat::Identity()};

  Pose() = default;
  Pose(const Vec3& t, const Quat& q);

  static Pose identity() { return {}; }
  static Pose fromTranslation(double x, double y, double z);
  static Pose fromTranslation(const Vec3& t);
  static Pose fromAxisAngle(const Vec3& axis, double angle,
                            const Vec3& t = Vec3::Zero());
  static Pose rotX(double angle) { return fromAxisAngle(Vec3::UnitX(), angle); }
  static Pose rotY(double angle) { return fromAxisAngle(Vec3::UnitY(), angle); }
  static Pose rotZ(double angle) { return fromAxisAngle(Vec3::UnitZ(), angle); }

  /// Applies the transform to a point.
  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
};

/// Bandwidths of the pose kernel: translation in meters, rotation in radians.
struct PoseDistanceParams {
  double sigma_t = 0.02;
  double sigma_r = 0.1;

  void validate() const;
};

/// Normalizes and applies the canonical sign convention.
Quat canonicalQuat(Quat q);

/// a then b applied from the right: result(p) = a(b(p)).
Pose compose(const Pose& a, const Pose& b);

Pose inverse(const Pose& a);

/// Pose of `target` expressed in the frame of `ref`: ref^-1 * target.
Pose relativePose(const Pose& ref, const Pose& target);

/// Geodesic rotation angle between two unit quaternions, in [0, pi].
double rotationAngle(const Quat& a, const Quat& b);

/// Bandwidth-normalized pose distance:
/// d^2 = |ta - tb|^2 / sigma_t^2 + theta^2 / sigma_r^2.
double poseDistance(const Pose& a, const Pose& b,
                    const PoseDistanceParams& params);

/// Arithmetic translation mean and sign-aligned normalized quaternion mean.
/// Throws ValidationError on an empty input.
Pose meanPose(std::span<const Pose> poses);
Pose meanPose(const std::vector<Pose>& poses);

/// Componentwise comparison with quaternion sign alignment.
bool approxEqual(const Pose& a, const Pose& b, double tol = kPoseTolerance);

}  // namespace improv
