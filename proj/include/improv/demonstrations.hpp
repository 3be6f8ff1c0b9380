#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "improv/world.hpp"

namespace improv {

/// One recorded time step of a demonstration.
struct Frame {
  double t = 0.0;
  WorldState poses;
  std::optional<Pose> hand;
};

/// A raw demonstration trace. Timestamps strictly increase and every frame
/// carries the same object-id set.
struct RawDemo {
  std::vector<ObjectId> object_ids;
  std::vector<Frame> frames;
};

struct SegmentParams {
  double eps_move = 0.005;   // meters-equivalent per frame
  int min_frames = 3;        // minimum moving transitions per segment
  double hand_radius = 0.3;  // meters; only used when hand poses are present
};

/// Tolerance below which an object counts as static between two states.
struct StaticTolerance {
  double translation = 0.005;            // 5 mm
  double rotation = 2.0 * kPi / 180.0;   // 2 degrees
};

/// One manipulation of a single object: grasp at start_state, release at
/// end_state, with the object's pose trajectory in between.
struct ActionSegment {
  ObjectId object_id;
  WorldState start_state;
  WorldState end_state;
  std::vector<Pose> path;
};

/// A segmented demonstration ending in a goal state.
struct Demo {
  std::vector<ActionSegment> segments;
  WorldState final_state;
};

/// All demonstrations of one task over a shared object set.
struct TaskDemoSet {
  std::vector<Demo> demos;
  std::vector<ObjectId> object_ids;

  int demoCount() const { return static_cast<int>(demos.size()); }
};

/// Motion magnitude between two poses of the same object:
/// translation norm plus rotation angle scaled by a 0.1 m lever arm.
double motionMagnitude(const Pose& a, const Pose& b);

/// Splits a raw trace into per-object action segments. Intervals where
/// exactly one object moves beyond eps_move for at least min_frames
/// transitions (with the hand nearby, when hand poses exist) become segments;
/// same-object intervals separated by fewer than min_frames static frames are
/// merged. Throws ValidationError when two objects move at once.
std::vector<ActionSegment> segmentDemo(const RawDemo& raw,
                                       const SegmentParams& params = {});

/// Validates per-demo invariants and assembles the task-level set.
TaskDemoSet buildTaskDemoSet(const std::vector<Demo>& demos,
                             const StaticTolerance& tol = {});

using PairKey = std::pair<ObjectId, ObjectId>;  // (k, l): k relative to l

/// Final-state relative poses per ordered object pair; every list holds one
/// entry per demonstration.
std::map<PairKey, std::vector<Pose>> extractFinalRelations(
    const TaskDemoSet& set);

inline constexpr const char* kSelfTemplateId = "self";

/// Per manipulated object, per template, the end-of-segment poses of the
/// object relative to the template's reference. Cross templates are keyed by
/// the reference object id, the self template by kSelfTemplateId.
std::map<ObjectId, std::map<std::string, std::vector<Pose>>>
extractActionSamples(const TaskDemoSet& set);

}  // namespace improv
