#include "improv/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "improv/errors.hpp"

namespace improv {

Quat canonicalQuat(Quat q) {
  q.normalize();
  bool flip = false;
  if (q.w() < 0.0) {
    flip = true;
  } else if (q.w() == 0.0) {
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

Pose::Pose(const Vec3& t, const Quat& q)
    : translation(t), rotation(canonicalQuat(q)) {}

Pose Pose::fromTranslation(double x, double y, double z) {
  return Pose(Vec3(x, y, z), Quat::Identity());
}

Pose Pose::fromTranslation(const Vec3& t) { return Pose(t, Quat::Identity()); }

Pose Pose::fromAxisAngle(const Vec3& axis, double angle, const Vec3& t) {
  return Pose(t, Quat(Eigen::AngleAxisd(angle, axis.normalized())));
}

void PoseDistanceParams::validate() const {
  if (!(sigma_t > 0.0) || !(sigma_r > 0.0)) {
    throw ValidationError("pose distance bandwidths must be strictly positive");
  }
}

Pose compose(const Pose& a, const Pose& b) {
  return Pose(a.translation + a.rotation * b.translation,
              a.rotation * b.rotation);
}

Pose inverse(const Pose& a) {
  Quat qi = a.rotation.conjugate();
  return Pose(-(qi * a.translation), qi);
}

Pose relativePose(const Pose& ref, const Pose& target) {
  return compose(inverse(ref), target);
}

double rotationAngle(const Quat& a, const Quat& b) {
  double d = std::min(std::abs(a.dot(b)), 1.0);
  return 2.0 * std::acos(d);
}

double poseDistance(const Pose& a, const Pose& b,
                    const PoseDistanceParams& params) {
  params.validate();
  double dt = (a.translation - b.translation).norm() / params.sigma_t;
  double dr = rotationAngle(a.rotation, b.rotation) / params.sigma_r;
  return std::sqrt(dt * dt + dr * dr);
}

Pose meanPose(std::span<const Pose> poses) {
  if (poses.empty()) {
    throw ValidationError("meanPose: empty pose list (invalid cluster)");
  }
  Vec3 t = Vec3::Zero();
  Eigen::Vector4d q = Eigen::Vector4d::Zero();
  const Quat& anchor = poses.front().rotation;
  for (const Pose& p : poses) {
    t += p.translation;
    double sign = anchor.dot(p.rotation) < 0.0 ? -1.0 : 1.0;
    q += sign * p.rotation.coeffs();
  }
  t /= static_cast<double>(poses.size());
  if (q.norm() < 1e-12) {
    // Degenerate spread; fall back to the anchor rotation.
    return Pose(t, anchor);
  }
  return Pose(t, Quat(q));
}

Pose meanPose(const std::vector<Pose>& poses) {
  return meanPose(std::span<const Pose>(poses.data(), poses.size()));
}

bool approxEqual(const Pose& a, const Pose& b, double tol) {
  if (((a.translation - b.translation).array().abs() > tol).any()) {
    return false;
  }
  Eigen::Vector4d qb = b.rotation.coeffs();
  if (a.rotation.dot(b.rotation) < 0.0) qb = -qb;
  return ((a.rotation.coeffs() - qb).array().abs() <= tol).all();
}

}  // namespace improv
