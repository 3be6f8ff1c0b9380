#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "improv/world.hpp"

namespace improv {

struct Aabb {
  Vec3 min{Vec3::Zero()};
  Vec3 max{Vec3::Zero()};

  bool contains(const Vec3& p) const {
    return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
  }
};

/// Geometric world description: box shapes, workspace bounds, the support
/// plane height, the abstract reach radius standing in for inverse
/// kinematics, and the transport lift height.
struct SceneSpec {
  std::map<ObjectId, Vec3> objects;  // id -> box half extents
  Aabb workspace;
  double support_height = 0.0;
  double reach_radius = 0.9;
  double lift_height = 0.15;

  void validate() const;
};

/// Lift-carry-place motion of one object. Waypoint 0 is the start pose, the
/// last waypoint the goal pose; grasp_index ends the lift phase and
/// place_index starts the descent.
struct Trajectory {
  ObjectId object_id;
  std::vector<Pose> waypoints;
  int grasp_index = 0;
  int place_index = 0;
};

/// The eight corners of an oriented box.
std::array<Vec3, 8> boxCorners(const Vec3& half_extents, const Pose& pose);

/// Separating-axis test over the 15 candidate axes. Contacts within a margin
/// of 1e-6 m count as non-overlapping.
bool boxesOverlap(const Vec3& half_a, const Pose& pose_a, const Vec3& half_b,
                  const Pose& pose_b);

/// A state is feasible when no boxes overlap, every box lies inside the
/// workspace, and every object can be reached from some free spot on the
/// support plane within reach_radius.
bool stateFeasible(const SceneSpec& scene, const WorldState& state);

/// Builds the lift (25% of waypoints), carry (50%, linear translation +
/// spherical rotation interpolation at lifted height) and place (25%) motion.
Trajectory generateTrajectory(const SceneSpec& scene, const WorldState& state,
                              const ObjectId& object_id, const Pose& goal,
                              int waypoint_count);

struct TrajectoryCheck {
  bool feasible = false;
  std::optional<int> failing_index;
};

/// Per-waypoint collision, workspace (inflated upward by lift_height for
/// intermediate waypoints) and reach checks of the moved box against the
/// static rest of the state, plus a full state check of the end state.
TrajectoryCheck trajectoryFeasible(const SceneSpec& scene,
                                   const WorldState& state,
                                   const Trajectory& traj);

}  // namespace improv
