#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "improv/demonstrations.hpp"
#include "improv/feasibility.hpp"
#include "improv/model.hpp"
#include "improv/planner.hpp"

namespace improv {

// Poses serialize as {"t":[x,y,z],"q":[w,x,y,z]} with canonical quaternion
// sign; all scalars round-trip bit-exactly.

nlohmann::json poseToJson(const Pose& pose);
Pose poseFromJson(const nlohmann::json& j);

nlohmann::json stateToJson(const WorldState& state);
WorldState stateFromJson(const nlohmann::json& j);

SceneSpec sceneFromJson(const nlohmann::json& j);
nlohmann::json sceneToJson(const SceneSpec& scene);
SceneSpec loadScene(const std::filesystem::path& path);
void saveScene(const SceneSpec& scene, const std::filesystem::path& path);

/// A demo file is either a raw frame trace (with object shapes) or a
/// pre-segmented demonstration.
struct LoadedDemoFile {
  std::optional<RawDemo> raw;
  std::optional<Demo> segmented;
  std::map<ObjectId, Vec3> shapes;
};

LoadedDemoFile loadDemoFile(const std::filesystem::path& path);

/// Loads a raw frame trace; rejects pre-segmented files.
RawDemo loadDemo(const std::filesystem::path& path);

void saveRawDemo(const RawDemo& demo, const std::map<ObjectId, Vec3>& shapes,
                 const std::filesystem::path& path);

void saveModel(const LearnedModel& model, const std::filesystem::path& path);
LearnedModel loadModel(const std::filesystem::path& path);

std::string planToJsonString(const Plan& plan);
void savePlan(const Plan& plan, const std::filesystem::path& path);
Plan loadPlan(const std::filesystem::path& path);

WorldState loadStartState(const std::filesystem::path& path);
void saveStartState(const WorldState& state,
                    const std::filesystem::path& path);

}  // namespace improv
