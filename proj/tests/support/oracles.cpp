#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace improv::testoracle {

namespace {

std::array<Vec3, 8> localCorners(const Vec3& half) {
  std::array<Vec3, 8> corners;
  int n = 0;
  for (int sx : {-1, 1}) {
    for (int sy : {-1, 1}) {
      for (int sz : {-1, 1}) {
        corners[n++] = Vec3(sx * half.x(), sy * half.y(), sz * half.z());
      }
    }
  }
  return corners;
}

// Corner pairs differing in exactly one sign bit.
const int kEdges[12][2] = {{0, 1}, {0, 2}, {0, 4}, {1, 3}, {1, 5}, {2, 3},
                           {2, 6}, {3, 7}, {4, 5}, {4, 6}, {5, 7}, {6, 7}};

bool pointInsideAabb(const Vec3& p, const Vec3& half, double eps = 1e-12) {
  return std::abs(p.x()) <= half.x() + eps &&
         std::abs(p.y()) <= half.y() + eps && std::abs(p.z()) <= half.z() + eps;
}

// Closed segment vs axis-aligned box via slab clipping.
bool segmentHitsAabb(const Vec3& p0, const Vec3& p1, const Vec3& half) {
  double tmin = 0.0, tmax = 1.0;
  Vec3 d = p1 - p0;
  for (int axis = 0; axis < 3; ++axis) {
    if (std::abs(d[axis]) < 1e-14) {
      if (std::abs(p0[axis]) > half[axis]) return false;
      continue;
    }
    double t0 = (-half[axis] - p0[axis]) / d[axis];
    double t1 = (half[axis] - p0[axis]) / d[axis];
    if (t0 > t1) std::swap(t0, t1);
    tmin = std::max(tmin, t0);
    tmax = std::min(tmax, t1);
    if (tmin > tmax) return false;
  }
  return true;
}

// True when any edge of the box posed by (half_a, a_in_b) hits the axis
// aligned box half_b at the origin.
bool edgesHitBox(const Vec3& half_a, const Eigen::Isometry3d& a_in_b,
                 const Vec3& half_b) {
  auto corners = localCorners(half_a);
  std::array<Vec3, 8> world;
  for (int i = 0; i < 8; ++i) world[i] = a_in_b * corners[i];
  for (const auto& edge : kEdges) {
    if (segmentHitsAabb(world[edge[0]], world[edge[1]], half_b)) return true;
  }
  return false;
}

Eigen::Isometry3d isometry(const Pose& pose) {
  Eigen::Isometry3d iso = Eigen::Isometry3d::Identity();
  iso.linear() = pose.rotation.toRotationMatrix();
  iso.translation() = pose.translation;
  return iso;
}

}  // namespace

Eigen::Matrix4d poseMatrix(const Pose& pose) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = pose.rotation.toRotationMatrix();
  m.topRightCorner<3, 1>() = pose.translation;
  return m;
}

Pose poseFromMatrix(const Eigen::Matrix4d& m) {
  return Pose(m.topRightCorner<3, 1>(),
              Quat(Eigen::Matrix3d(m.topLeftCorner<3, 3>())));
}

Pose composeByMatrix(const Pose& a, const Pose& b) {
  return poseFromMatrix(Eigen::Matrix4d(poseMatrix(a) * poseMatrix(b)));
}

Pose relativeByMatrix(const Pose& ref, const Pose& target) {
  return poseFromMatrix(
      Eigen::Matrix4d(poseMatrix(ref).inverse() * poseMatrix(target)));
}

bool boxesIntersectExact(const Vec3& half_a, const Pose& pose_a,
                         const Vec3& half_b, const Pose& pose_b) {
  Eigen::Isometry3d a_in_b = isometry(pose_b).inverse() * isometry(pose_a);
  Eigen::Isometry3d b_in_a = a_in_b.inverse();

  for (const Vec3& c : localCorners(half_a)) {
    if (pointInsideAabb(a_in_b * c, half_b)) return true;
  }
  for (const Vec3& c : localCorners(half_b)) {
    if (pointInsideAabb(b_in_a * c, half_a)) return true;
  }
  if (edgesHitBox(half_a, a_in_b, half_b)) return true;
  if (edgesHitBox(half_b, b_in_a, half_a)) return true;
  return false;
}

bool boxesOverlapByPointSampling(const Vec3& half_a, const Pose& pose_a,
                                 const Vec3& half_b, const Pose& pose_b,
                                 int grid) {
  Eigen::Isometry3d a_in_b = isometry(pose_b).inverse() * isometry(pose_a);
  for (int i = 0; i < grid; ++i) {
    double x = half_a.x() * (2.0 * i / (grid - 1) - 1.0);
    for (int j = 0; j < grid; ++j) {
      double y = half_a.y() * (2.0 * j / (grid - 1) - 1.0);
      for (int k = 0; k < grid; ++k) {
        double z = half_a.z() * (2.0 * k / (grid - 1) - 1.0);
        if (pointInsideAabb(a_in_b * Vec3(x, y, z), half_b)) return true;
      }
    }
  }
  return false;
}

double boxSeparationBound(const Vec3& half_a, const Pose& pose_a,
                          const Vec3& half_b, const Pose& pose_b) {
  const Eigen::Matrix3d ra = pose_a.rotation.toRotationMatrix();
  const Eigen::Matrix3d rb = pose_b.rotation.toRotationMatrix();
  const Vec3 d = pose_b.translation - pose_a.translation;

  std::vector<Vec3> axes;
  for (int i = 0; i < 3; ++i) axes.push_back(ra.col(i));
  for (int i = 0; i < 3; ++i) axes.push_back(rb.col(i));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Vec3 cross = ra.col(i).cross(rb.col(j));
      double len = cross.norm();
      if (len > 1e-9) axes.push_back(cross / len);
    }
  }

  double max_separation = -std::numeric_limits<double>::infinity();
  double min_penetration = std::numeric_limits<double>::infinity();
  for (const Vec3& axis : axes) {
    double radius_a = half_a.x() * std::abs(axis.dot(ra.col(0))) +
                      half_a.y() * std::abs(axis.dot(ra.col(1))) +
                      half_a.z() * std::abs(axis.dot(ra.col(2)));
    double radius_b = half_b.x() * std::abs(axis.dot(rb.col(0))) +
                      half_b.y() * std::abs(axis.dot(rb.col(1))) +
                      half_b.z() * std::abs(axis.dot(rb.col(2)));
    double gap = std::abs(axis.dot(d)) - (radius_a + radius_b);
    max_separation = std::max(max_separation, gap);
    min_penetration = std::min(min_penetration, -gap);
  }
  return max_separation > 0.0 ? max_separation : -min_penetration;
}

double singleModeEntropy(const PoseDistanceParams& params) {
  double log_two_pi = std::log(2.0 * kPi);
  return 1.5 * (1.0 + log_two_pi) + 3.0 * std::log(params.sigma_t) +
         0.5 * (1.0 + log_two_pi) + std::log(params.sigma_r);
}

double bestPathValue(const SearchNode& node, double action_cost) {
  if (node.kind == NodeKind::kActionSelection) {
    if (node.terminal || !node.expanded || node.children.empty()) {
      if (node.value == kNegInf) return kNegInf;  // demoted
      return node.psi - node.depth * action_cost;
    }
  }
  double best = kNegInf;
  for (const auto& child : node.children) {
    best = std::max(best, bestPathValue(*child, action_cost));
  }
  return best;
}

}  // namespace improv::testoracle
