#include "improv/serialization.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "improv/errors.hpp"

namespace improv {

using nlohmann::json;

namespace {

json readJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open file '" + path.string() + "'");
  }
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("file '" + path.string() + "' is not valid JSON: " +
                     e.what());
  }
}

void writeJsonFile(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError("cannot write file '" + path.string() + "'");
  }
  out << j.dump(2) << '\n';
}

json vec3ToJson(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec3FromJson(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) {
    throw ParseError(std::string(what) + " must be an array of 3 numbers");
  }
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

Trajectory trajectoryFromJson(const ObjectId& object, const json& j) {
  Trajectory traj;
  traj.object_id = object;
  for (const json& wp : j) traj.waypoints.push_back(poseFromJson(wp));
  int n = static_cast<int>(traj.waypoints.size());
  traj.grasp_index = 0;
  traj.place_index = std::max(0, n - 1);
  return traj;
}

}  // namespace

json poseToJson(const Pose& pose) {
  return json{{"t", vec3ToJson(pose.translation)},
              {"q", json::array({pose.rotation.w(), pose.rotation.x(),
                                 pose.rotation.y(), pose.rotation.z()})}};
}

Pose poseFromJson(const json& j) {
  if (!j.is_object() || !j.contains("t") || !j.contains("q")) {
    throw ParseError("pose must be an object {\"t\":[...],\"q\":[...]}");
  }
  const json& q = j["q"];
  if (!q.is_array() || q.size() != 4) {
    throw ParseError("pose rotation must hold 4 numbers (w,x,y,z)");
  }
  return Pose(vec3FromJson(j["t"], "pose translation"),
              Quat(q[0].get<double>(), q[1].get<double>(), q[2].get<double>(),
                   q[3].get<double>()));
}

json stateToJson(const WorldState& state) {
  json j = json::object();
  for (const auto& [id, pose] : state) j[id] = poseToJson(pose);
  return j;
}

WorldState stateFromJson(const json& j) {
  if (!j.is_object()) throw ParseError("state must map object ids to poses");
  WorldState state;
  for (const auto& [id, pose] : j.items()) state[id] = poseFromJson(pose);
  return state;
}

SceneSpec sceneFromJson(const json& j) {
  SceneSpec scene;
  const json& ws = j.at("workspace");
  if (!ws.is_array() || ws.size() != 2) {
    throw ParseError("scene workspace must be [[min],[max]]");
  }
  scene.workspace.min = vec3FromJson(ws[0], "workspace min");
  scene.workspace.max = vec3FromJson(ws[1], "workspace max");
  scene.support_height = j.at("support_height").get<double>();
  scene.reach_radius = j.at("reach_radius").get<double>();
  scene.lift_height = j.at("lift_height").get<double>();
  for (const json& obj : j.at("objects")) {
    scene.objects[obj.at("id").get<std::string>()] =
        vec3FromJson(obj.at("box"), "object box");
  }
  scene.validate();
  return scene;
}

json sceneToJson(const SceneSpec& scene) {
  json objects = json::array();
  for (const auto& [id, half] : scene.objects) {
    objects.push_back({{"id", id}, {"box", vec3ToJson(half)}});
  }
  return json{{"workspace", json::array({vec3ToJson(scene.workspace.min),
                                         vec3ToJson(scene.workspace.max)})},
              {"support_height", scene.support_height},
              {"reach_radius", scene.reach_radius},
              {"lift_height", scene.lift_height},
              {"objects", objects}};
}

SceneSpec loadScene(const std::filesystem::path& path) {
  try {
    return sceneFromJson(readJsonFile(path));
  } catch (const json::exception& e) {
    throw ParseError("scene file '" + path.string() + "': " + e.what());
  }
}

void saveScene(const SceneSpec& scene, const std::filesystem::path& path) {
  writeJsonFile(sceneToJson(scene), path);
}

LoadedDemoFile loadDemoFile(const std::filesystem::path& path) {
  json j = readJsonFile(path);
  LoadedDemoFile out;
  try {
    if (j.contains("objects")) {
      for (const json& obj : j["objects"]) {
        out.shapes[obj.at("id").get<std::string>()] =
            vec3FromJson(obj.at("shape").at("box"), "object shape");
      }
    }
    if (j.contains("segments")) {
      Demo demo;
      for (const json& seg : j.at("segments")) {
        ActionSegment segment;
        segment.object_id = seg.at("object").get<std::string>();
        segment.start_state = stateFromJson(seg.at("start"));
        segment.end_state = stateFromJson(seg.at("end"));
        for (const json& p : seg.at("path")) {
          segment.path.push_back(poseFromJson(p));
        }
        demo.segments.push_back(std::move(segment));
      }
      demo.final_state = stateFromJson(j.at("final"));
      out.segmented = std::move(demo);
      return out;
    }

    if (!j.contains("frames")) {
      throw ParseError("demo file '" + path.string() +
                       "' holds neither frames nor segments");
    }
    const json& frames = j["frames"];
    if (!frames.is_array() || frames.empty()) {
      throw ParseError("demo file '" + path.string() +
                       "': empty demonstration");
    }
    RawDemo raw;
    std::set<ObjectId> id_set;
    int index = 0;
    for (const json& fj : frames) {
      Frame frame;
      frame.t = fj.at("t").get<double>();
      frame.poses = stateFromJson(fj.at("poses"));
      if (fj.contains("hand") && !fj["hand"].is_null()) {
        frame.hand = poseFromJson(fj["hand"]);
      }
      if (index == 0) {
        for (const auto& [id, pose] : frame.poses) {
          raw.object_ids.push_back(id);
          id_set.insert(id);
        }
        if (raw.object_ids.empty()) {
          throw ParseError("demo file '" + path.string() +
                           "': frame 0 holds no objects");
        }
      } else {
        if (frame.t <= raw.frames.back().t) {
          throw ParseError("demo file '" + path.string() +
                           "': timestamps not increasing at frame " +
                           std::to_string(index));
        }
        if (frame.poses.size() != id_set.size() ||
            !std::all_of(frame.poses.begin(), frame.poses.end(),
                         [&](const auto& kv) {
                           return id_set.count(kv.first) > 0;
                         })) {
          throw ParseError("demo file '" + path.string() +
                           "': inconsistent object set at frame " +
                           std::to_string(index));
        }
      }
      raw.frames.push_back(std::move(frame));
      ++index;
    }
    out.raw = std::move(raw);
    return out;
  } catch (const json::exception& e) {
    throw ParseError("demo file '" + path.string() + "': " + e.what());
  }
}

RawDemo loadDemo(const std::filesystem::path& path) {
  LoadedDemoFile loaded = loadDemoFile(path);
  if (!loaded.raw) {
    throw ParseError("demo file '" + path.string() +
                     "' is pre-segmented; expected a raw frame trace");
  }
  return std::move(*loaded.raw);
}

void saveRawDemo(const RawDemo& demo, const std::map<ObjectId, Vec3>& shapes,
                 const std::filesystem::path& path) {
  json objects = json::array();
  for (const ObjectId& id : demo.object_ids) {
    json entry{{"id", id}};
    auto it = shapes.find(id);
    if (it != shapes.end()) {
      entry["shape"] = json{{"box", vec3ToJson(it->second)}};
    }
    objects.push_back(std::move(entry));
  }
  json frames = json::array();
  for (const Frame& frame : demo.frames) {
    json fj{{"t", frame.t}, {"poses", stateToJson(frame.poses)}};
    fj["hand"] = frame.hand ? poseToJson(*frame.hand) : json(nullptr);
    frames.push_back(std::move(fj));
  }
  writeJsonFile(json{{"objects", objects}, {"frames", frames}}, path);
}

void saveModel(const LearnedModel& model, const std::filesystem::path& path) {
  json relations = json::array();
  for (const RelationModel& rel : model.intention.relations) {
    json samples = json::array();
    for (const Pose& p : rel.samples) samples.push_back(poseToJson(p));
    relations.push_back({{"object", rel.object},
                         {"reference", rel.reference},
                         {"samples", samples},
                         {"entropy", rel.entropy},
                         {"weight", rel.weight}});
  }
  json actions = json::array();
  for (const ActionModel& action : model.actions) {
    json templates = json::array();
    for (const ActionTemplate& tmpl : action.templates) {
      json samples = json::array();
      for (const Pose& p : tmpl.samples) samples.push_back(poseToJson(p));
      templates.push_back({{"id", tmpl.template_id},
                           {"reference", tmpl.reference_object},
                           {"samples", samples}});
    }
    actions.push_back({{"id", action.action_id},
                       {"object", action.object_id},
                       {"noop", action.is_noop},
                       {"templates", templates}});
  }
  json j{{"object_ids", model.object_ids},
         {"demo_count", model.demo_count},
         {"bandwidth",
          {{"sigma_t", model.intention.bandwidth.sigma_t},
           {"sigma_r", model.intention.bandwidth.sigma_r}}},
         {"eta", model.intention.eta},
         {"eps_h", model.intention.eps_h},
         {"entropy_samples", model.entropy_samples},
         {"entropy_seed", model.entropy_seed},
         {"psi_first_demo", model.psi_first_demo},
         {"psi_demo_mean", model.psi_demo_mean},
         {"relations", relations},
         {"actions", actions}};
  writeJsonFile(j, path);
}

LearnedModel loadModel(const std::filesystem::path& path) {
  json j = readJsonFile(path);
  try {
    LearnedModel model;
    model.object_ids = j.at("object_ids").get<std::vector<std::string>>();
    model.demo_count = j.at("demo_count").get<int>();
    model.intention.bandwidth.sigma_t =
        j.at("bandwidth").at("sigma_t").get<double>();
    model.intention.bandwidth.sigma_r =
        j.at("bandwidth").at("sigma_r").get<double>();
    model.intention.eta = j.at("eta").get<double>();
    model.intention.eps_h = j.at("eps_h").get<double>();
    model.entropy_samples = j.at("entropy_samples").get<int>();
    model.entropy_seed = j.at("entropy_seed").get<std::uint64_t>();
    model.psi_first_demo = j.at("psi_first_demo").get<double>();
    model.psi_demo_mean = j.at("psi_demo_mean").get<double>();
    for (const json& rj : j.at("relations")) {
      RelationModel rel;
      rel.object = rj.at("object").get<std::string>();
      rel.reference = rj.at("reference").get<std::string>();
      for (const json& p : rj.at("samples")) {
        rel.samples.push_back(poseFromJson(p));
      }
      rel.bandwidth = model.intention.bandwidth;
      rel.entropy = rj.at("entropy").get<double>();
      rel.weight = rj.at("weight").get<double>();
      model.intention.relations.push_back(std::move(rel));
    }
    for (const json& aj : j.at("actions")) {
      ActionModel action;
      action.action_id = aj.at("id").get<std::string>();
      action.object_id = aj.at("object").get<std::string>();
      action.is_noop = aj.at("noop").get<bool>();
      for (const json& tj : aj.at("templates")) {
        ActionTemplate tmpl;
        tmpl.template_id = tj.at("id").get<std::string>();
        tmpl.reference_object = tj.at("reference").get<std::string>();
        for (const json& p : tj.at("samples")) {
          tmpl.samples.push_back(poseFromJson(p));
        }
        action.templates.push_back(std::move(tmpl));
      }
      model.actions.push_back(std::move(action));
    }
    return model;
  } catch (const json::exception& e) {
    throw ParseError("model file '" + path.string() + "': " + e.what());
  }
}

namespace {

json planToJson(const Plan& plan) {
  json steps = json::array();
  for (const PlanStep& step : plan.steps) {
    json trajectory = json::array();
    if (step.trajectory) {
      for (const Pose& wp : step.trajectory->waypoints) {
        trajectory.push_back(poseToJson(wp));
      }
    }
    steps.push_back({{"action", step.action_id},
                     {"template", step.template_id},
                     {"goal_state", stateToJson(step.goal_state)},
                     {"trajectory", trajectory}});
  }
  return json{{"steps", steps},
              {"value", plan.value},
              {"start_state", stateToJson(plan.start_state)},
              {"final_state", stateToJson(plan.final_state)},
              {"iterations_used", plan.iterations_used}};
}

}  // namespace

std::string planToJsonString(const Plan& plan) {
  return planToJson(plan).dump(2) + "\n";
}

void savePlan(const Plan& plan, const std::filesystem::path& path) {
  writeJsonFile(planToJson(plan), path);
}

Plan loadPlan(const std::filesystem::path& path) {
  json j = readJsonFile(path);
  try {
    Plan plan;
    plan.value = j.at("value").get<double>();
    plan.start_state = stateFromJson(j.at("start_state"));
    plan.final_state = stateFromJson(j.at("final_state"));
    plan.iterations_used = j.at("iterations_used").get<int>();
    WorldState previous = plan.start_state;
    for (const json& sj : j.at("steps")) {
      PlanStep step;
      step.action_id = sj.at("action").get<std::string>();
      step.template_id = sj.at("template").get<std::string>();
      step.goal_state = stateFromJson(sj.at("goal_state"));
      step.object_id = step.action_id;  // actions are named by their object
      if (sj.contains("trajectory") && !sj["trajectory"].empty()) {
        step.trajectory = trajectoryFromJson(step.object_id, sj["trajectory"]);
      }
      plan.steps.push_back(std::move(step));
    }
    return plan;
  } catch (const json::exception& e) {
    throw ParseError("plan file '" + path.string() + "': " + e.what());
  }
}

WorldState loadStartState(const std::filesystem::path& path) {
  json j = readJsonFile(path);
  try {
    return stateFromJson(j.contains("poses") ? j["poses"] : j);
  } catch (const json::exception& e) {
    throw ParseError("state file '" + path.string() + "': " + e.what());
  }
}

void saveStartState(const WorldState& state,
                    const std::filesystem::path& path) {
  writeJsonFile(json{{"poses", stateToJson(state)}}, path);
}

}  // namespace improv
