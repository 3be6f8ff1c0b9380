#include "improv/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "improv/errors.hpp"

namespace improv {

namespace {

constexpr double kContactMargin = 1e-6;  // meters
constexpr int kReachGrid = 41;           // support-plane sampling per axis

struct Footprint {
  double min_x, max_x, min_y, max_y;

  bool covers(double x, double y) const {
    return x >= min_x && x <= max_x && y >= min_y && y <= max_y;
  }
};

Footprint footprintOf(const Vec3& half_extents, const Pose& pose) {
  auto corners = boxCorners(half_extents, pose);
  Footprint fp{corners[0].x(), corners[0].x(), corners[0].y(), corners[0].y()};
  for (const Vec3& c : corners) {
    fp.min_x = std::min(fp.min_x, c.x());
    fp.max_x = std::max(fp.max_x, c.x());
    fp.min_y = std::min(fp.min_y, c.y());
    fp.max_y = std::max(fp.max_y, c.y());
  }
  return fp;
}

// True when some support-plane point inside the workspace, clear of every
// footprint, lies within reach_radius of the target position.
bool reachableFrom(const SceneSpec& scene,
                   const std::vector<Footprint>& footprints,
                   const Vec3& target) {
  const double x0 = scene.workspace.min.x();
  const double y0 = scene.workspace.min.y();
  const double dx = (scene.workspace.max.x() - x0) / (kReachGrid - 1);
  const double dy = (scene.workspace.max.y() - y0) / (kReachGrid - 1);
  const double r2 = scene.reach_radius * scene.reach_radius;
  for (int i = 0; i < kReachGrid; ++i) {
    double x = x0 + i * dx;
    for (int j = 0; j < kReachGrid; ++j) {
      double y = y0 + j * dy;
      bool clear = true;
      for (const Footprint& fp : footprints) {
        if (fp.covers(x, y)) {
          clear = false;
          break;
        }
      }
      if (!clear) continue;
      Vec3 p(x, y, scene.support_height);
      if ((p - target).squaredNorm() <= r2) return true;
    }
  }
  return false;
}

bool insideBounds(const Vec3& half_extents, const Pose& pose,
                  const Aabb& bounds) {
  for (const Vec3& c : boxCorners(half_extents, pose)) {
    if (!bounds.contains(c)) return false;
  }
  return true;
}

}  // namespace

void SceneSpec::validate() const {
  for (const auto& [id, half] : objects) {
    if (!(half.minCoeff() > 0.0)) {
      throw ValidationError("object '" + id +
                            "' must have positive half extents");
    }
  }
  if (!((workspace.max - workspace.min).minCoeff() > 0.0)) {
    throw ValidationError("workspace bounds are degenerate");
  }
  if (!(reach_radius > 0.0)) {
    throw ValidationError("reach radius must be positive");
  }
  if (lift_height < 0.0) {
    throw ValidationError("lift height must be non-negative");
  }
}

std::array<Vec3, 8> boxCorners(const Vec3& half_extents, const Pose& pose) {
  std::array<Vec3, 8> corners;
  int n = 0;
  for (int sx : {-1, 1}) {
    for (int sy : {-1, 1}) {
      for (int sz : {-1, 1}) {
        corners[n++] = pose.apply(Vec3(sx * half_extents.x(),
                                       sy * half_extents.y(),
                                       sz * half_extents.z()));
      }
    }
  }
  return corners;
}

bool boxesOverlap(const Vec3& half_a, const Pose& pose_a, const Vec3& half_b,
                  const Pose& pose_b) {
  const Eigen::Matrix3d ra = pose_a.rotation.toRotationMatrix();
  const Eigen::Matrix3d rb = pose_b.rotation.toRotationMatrix();
  const Vec3 d = pose_b.translation - pose_a.translation;

  Vec3 axes[15];
  int n = 0;
  for (int i = 0; i < 3; ++i) axes[n++] = ra.col(i);
  for (int i = 0; i < 3; ++i) axes[n++] = rb.col(i);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Vec3 cross = ra.col(i).cross(rb.col(j));
      double len = cross.norm();
      if (len > 1e-9) axes[n++] = cross / len;  // skip near-parallel edges
    }
  }

  for (int k = 0; k < n; ++k) {
    const Vec3& axis = axes[k];
    double radius_a = half_a.x() * std::abs(axis.dot(ra.col(0))) +
                      half_a.y() * std::abs(axis.dot(ra.col(1))) +
                      half_a.z() * std::abs(axis.dot(ra.col(2)));
    double radius_b = half_b.x() * std::abs(axis.dot(rb.col(0))) +
                      half_b.y() * std::abs(axis.dot(rb.col(1))) +
                      half_b.z() * std::abs(axis.dot(rb.col(2)));
    if (std::abs(axis.dot(d)) >= radius_a + radius_b - kContactMargin) {
      return false;
    }
  }
  return true;
}

bool stateFeasible(const SceneSpec& scene, const WorldState& state) {
  scene.validate();
  std::vector<std::pair<const ObjectId*, const Pose*>> entries;
  entries.reserve(scene.objects.size());
  for (const auto& [id, half] : scene.objects) {
    auto it = state.find(id);
    if (it == state.end()) {
      throw ValidationError("state is missing scene object '" + id + "'");
    }
    entries.push_back({&id, &it->second});
  }

  std::vector<Footprint> footprints;
  footprints.reserve(entries.size());
  for (const auto& [id, pose] : entries) {
    const Vec3& half = scene.objects.at(*id);
    if (!insideBounds(half, *pose, scene.workspace)) return false;
    footprints.push_back(footprintOf(half, *pose));
  }

  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      if (boxesOverlap(scene.objects.at(*entries[i].first), *entries[i].second,
                       scene.objects.at(*entries[j].first),
                       *entries[j].second)) {
        return false;
      }
    }
  }

  for (const auto& [id, pose] : entries) {
    if (!reachableFrom(scene, footprints, pose->translation)) return false;
  }
  return true;
}

Trajectory generateTrajectory(const SceneSpec& scene, const WorldState& state,
                              const ObjectId& object_id, const Pose& goal,
                              int waypoint_count) {
  if (waypoint_count < 4) {
    throw ValidationError("trajectories need at least 4 waypoints");
  }
  auto it = state.find(object_id);
  if (it == state.end()) {
    throw ValidationError("state is missing object '" + object_id + "'");
  }
  const Pose& start = it->second;
  const Vec3 lift(0.0, 0.0, scene.lift_height);

  Trajectory traj;
  traj.object_id = object_id;
  traj.waypoints.reserve(waypoint_count);
  traj.grasp_index = 0;
  traj.place_index = waypoint_count - 1;
  for (int i = 0; i < waypoint_count; ++i) {
    double u = static_cast<double>(i) / (waypoint_count - 1);
    if (u <= 0.25) {
      traj.waypoints.emplace_back(start.translation + (u / 0.25) * lift,
                                  start.rotation);
      traj.grasp_index = i;
    } else if (u < 0.75) {
      double v = (u - 0.25) / 0.5;
      Vec3 from = start.translation + lift;
      Vec3 to = goal.translation + lift;
      traj.waypoints.emplace_back(from + v * (to - from),
                                  start.rotation.slerp(v, goal.rotation));
    } else {
      if (i < traj.place_index) traj.place_index = i;
      traj.waypoints.emplace_back(goal.translation + ((1.0 - u) / 0.25) * lift,
                                  goal.rotation);
    }
  }
  return traj;
}

TrajectoryCheck trajectoryFeasible(const SceneSpec& scene,
                                   const WorldState& state,
                                   const Trajectory& traj) {
  scene.validate();
  auto obj_it = state.find(traj.object_id);
  if (obj_it == state.end()) {
    throw ValidationError("state is missing the moved object '" +
                          traj.object_id + "'");
  }
  if (traj.waypoints.size() < 2 ||
      !approxEqual(traj.waypoints.front(), obj_it->second, 1e-6)) {
    throw ValidationError(
        "trajectory does not start at the object's current pose");
  }
  const Vec3& moved_half = scene.objects.at(traj.object_id);

  std::vector<std::pair<const Vec3*, const Pose*>> statics;
  std::vector<Footprint> static_footprints;
  for (const auto& [id, half] : scene.objects) {
    if (id == traj.object_id) continue;
    auto it = state.find(id);
    if (it == state.end()) {
      throw ValidationError("state is missing scene object '" + id + "'");
    }
    statics.push_back({&half, &it->second});
    static_footprints.push_back(footprintOf(half, it->second));
  }

  // Intermediate waypoints may use the transport corridor above the
  // workspace; the placed end pose may not.
  Aabb inflated = scene.workspace;
  inflated.max.z() += scene.lift_height;

  const int last = static_cast<int>(traj.waypoints.size()) - 1;
  for (int i = 0; i <= last; ++i) {
    const Pose& wp = traj.waypoints[i];
    const Aabb& bounds = (i == last) ? scene.workspace : inflated;
    if (!insideBounds(moved_half, wp, bounds)) return {false, i};
    for (const auto& [half, pose] : statics) {
      if (boxesOverlap(moved_half, wp, *half, *pose)) return {false, i};
    }
    if (!reachableFrom(scene, static_footprints, wp.translation)) {
      return {false, i};
    }
  }

  WorldState end_state = state;
  end_state[traj.object_id] = traj.waypoints.back();
  if (!stateFeasible(scene, end_state)) return {false, last};
  return {true, std::nullopt};
}

}  // namespace improv
