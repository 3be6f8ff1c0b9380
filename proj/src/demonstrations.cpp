#include "improv/demonstrations.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "improv/errors.hpp"

namespace improv {

namespace {

constexpr double kRotationLeverArm = 0.1;  // meters per radian

bool poseStatic(const Pose& a, const Pose& b, const StaticTolerance& tol) {
  return (a.translation - b.translation).norm() <= tol.translation &&
         rotationAngle(a.rotation, b.rotation) <= tol.rotation;
}

void validateSegment(const ActionSegment& seg, const StaticTolerance& tol,
                     int demo_index) {
  auto fail = [&](const std::string& what) {
    std::ostringstream os;
    os << "demo " << demo_index << ", segment for '" << seg.object_id
       << "': " << what;
    throw ValidationError(os.str());
  };
  if (seg.path.size() < 2) fail("path must hold at least start and end pose");
  auto it = seg.start_state.find(seg.object_id);
  if (it == seg.start_state.end() ||
      seg.end_state.find(seg.object_id) == seg.end_state.end()) {
    fail("manipulated object missing from start or end state");
  }
  if (seg.start_state.size() != seg.end_state.size()) {
    fail("start and end states hold different object sets");
  }
  if (!approxEqual(seg.path.front(), it->second, 1e-6) ||
      !approxEqual(seg.path.back(), seg.end_state.at(seg.object_id), 1e-6)) {
    fail("path endpoints do not match the start/end object pose");
  }
  for (const auto& [id, start_pose] : seg.start_state) {
    if (id == seg.object_id) continue;
    auto end_it = seg.end_state.find(id);
    if (end_it == seg.end_state.end()) fail("object sets differ");
    if (!poseStatic(start_pose, end_it->second, tol)) {
      fail("non-manipulated object '" + id + "' moved during the segment");
    }
  }
}

}  // namespace

double motionMagnitude(const Pose& a, const Pose& b) {
  return (a.translation - b.translation).norm() +
         kRotationLeverArm * rotationAngle(a.rotation, b.rotation);
}

std::vector<ActionSegment> segmentDemo(const RawDemo& raw,
                                       const SegmentParams& params) {
  if (params.eps_move <= 0.0) {
    throw ValidationError("segmentation threshold eps_move must be positive");
  }
  if (params.min_frames < 1) {
    throw ValidationError("segmentation min_frames must be at least 1");
  }
  const auto& frames = raw.frames;
  if (frames.size() < 2) return {};

  const int transitions = static_cast<int>(frames.size()) - 1;
  // mover[i]: the single object displaced beyond eps_move on frame i -> i+1,
  // empty if none. Two simultaneous movers violate the one-object-per-action
  // assumption.
  std::vector<ObjectId> mover(transitions);
  for (int i = 0; i < transitions; ++i) {
    for (const ObjectId& id : raw.object_ids) {
      double mag = motionMagnitude(frames[i].poses.at(id),
                                   frames[i + 1].poses.at(id));
      if (mag <= params.eps_move) continue;
      if (!mover[i].empty()) {
        std::ostringstream os;
        os << "ambiguous co-movement of '" << mover[i] << "' and '" << id
           << "' at frame " << (i + 1);
        throw ValidationError(os.str());
      }
      mover[i] = id;
    }
    // Manipulation requires the teacher's hand near the object when hand
    // poses were recorded.
    if (!mover[i].empty() && frames[i].hand.has_value()) {
      const Vec3& obj = frames[i].poses.at(mover[i]).translation;
      double near_start =
          (frames[i].hand->translation - obj).norm();
      double near_end =
          frames[i + 1].hand
              ? (frames[i + 1].hand->translation -
                 frames[i + 1].poses.at(mover[i]).translation)
                    .norm()
              : near_start;
      if (std::min(near_start, near_end) > params.hand_radius) mover[i] = {};
    }
  }

  struct Interval {
    ObjectId object;
    int first = 0;  // first moving transition
    int last = 0;   // last moving transition
  };
  std::vector<Interval> intervals;
  for (int i = 0; i < transitions; ++i) {
    if (mover[i].empty()) continue;
    int j = i;
    while (j + 1 < transitions && mover[j + 1] == mover[i]) ++j;
    intervals.push_back({mover[i], i, j});
    i = j;
  }

  // Merge same-object intervals separated by short fully-static gaps.
  std::vector<Interval> merged;
  for (const Interval& iv : intervals) {
    if (!merged.empty() && merged.back().object == iv.object &&
        iv.first - merged.back().last - 1 < params.min_frames) {
      bool gap_static = true;
      for (int g = merged.back().last + 1; g < iv.first; ++g) {
        if (!mover[g].empty()) gap_static = false;
      }
      if (gap_static) {
        merged.back().last = iv.last;
        continue;
      }
    }
    merged.push_back(iv);
  }

  std::vector<ActionSegment> segments;
  for (const Interval& iv : merged) {
    if (iv.last - iv.first + 1 < params.min_frames) continue;
    ActionSegment seg;
    seg.object_id = iv.object;
    seg.start_state = frames[iv.first].poses;
    seg.end_state = frames[iv.last + 1].poses;
    for (int f = iv.first; f <= iv.last + 1; ++f) {
      seg.path.push_back(frames[f].poses.at(iv.object));
    }
    segments.push_back(std::move(seg));
  }
  return segments;
}

TaskDemoSet buildTaskDemoSet(const std::vector<Demo>& demos,
                             const StaticTolerance& tol) {
  if (demos.empty()) throw ValidationError("no demonstrations given");
  TaskDemoSet set;
  for (const auto& [id, pose] : demos.front().final_state) {
    set.object_ids.push_back(id);
  }
  int index = 0;
  for (const Demo& demo : demos) {
    if (demo.segments.empty()) {
      throw ValidationError("demo " + std::to_string(index) +
                            " holds no action segments");
    }
    if (demo.final_state.size() != set.object_ids.size() ||
        !std::all_of(set.object_ids.begin(), set.object_ids.end(),
                     [&](const ObjectId& id) {
                       return demo.final_state.count(id) > 0;
                     })) {
      throw ValidationError("demo " + std::to_string(index) +
                            " uses a different object-id set");
    }
    for (const ActionSegment& seg : demo.segments) {
      validateSegment(seg, tol, index);
    }
    if (!statesEqual(demo.segments.back().end_state, demo.final_state, 1e-6)) {
      throw ValidationError(
          "demo " + std::to_string(index) +
          ": final state differs from the last segment's end state");
    }
    set.demos.push_back(demo);
    ++index;
  }
  return set;
}

std::map<PairKey, std::vector<Pose>> extractFinalRelations(
    const TaskDemoSet& set) {
  std::map<PairKey, std::vector<Pose>> relations;
  for (const ObjectId& k : set.object_ids) {
    for (const ObjectId& l : set.object_ids) {
      if (k == l) continue;
      auto& list = relations[{k, l}];
      for (const Demo& demo : set.demos) {
        list.push_back(
            relativePose(demo.final_state.at(l), demo.final_state.at(k)));
      }
    }
  }
  return relations;
}

std::map<ObjectId, std::map<std::string, std::vector<Pose>>>
extractActionSamples(const TaskDemoSet& set) {
  std::map<ObjectId, std::map<std::string, std::vector<Pose>>> samples;
  for (const Demo& demo : set.demos) {
    for (const ActionSegment& seg : demo.segments) {
      auto& per_template = samples[seg.object_id];
      const Pose& end_pose = seg.end_state.at(seg.object_id);
      for (const ObjectId& ref : set.object_ids) {
        if (ref == seg.object_id) continue;
        per_template[ref].push_back(
            relativePose(seg.end_state.at(ref), end_pose));
      }
      per_template[kSelfTemplateId].push_back(
          relativePose(seg.start_state.at(seg.object_id), end_pose));
    }
  }
  return samples;
}

}  // namespace improv
