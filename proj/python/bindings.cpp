#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "improv/errors.hpp"
#include "improv/model.hpp"
#include "improv/oracle.hpp"
#include "improv/planner.hpp"
#include "improv/render.hpp"
#include "improv/serialization.hpp"
#include "improv/trials.hpp"

namespace py = pybind11;
using namespace improv;

namespace {

PlannerConfig configFromKwargs(const py::kwargs& kwargs) {
  PlannerConfig config;
  for (auto item : kwargs) {
    std::string key = py::cast<std::string>(item.first);
    if (key == "iterations") config.iterations = py::cast<int>(item.second);
    else if (key == "samples") config.goal_samples = py::cast<int>(item.second);
    else if (key == "action_cost") config.action_cost = py::cast<double>(item.second);
    else if (key == "tau0") config.tau0 = py::cast<double>(item.second);
    else if (key == "cluster_cutoff") config.cluster_cutoff = py::cast<double>(item.second);
    else if (key == "max_depth") config.max_depth = py::cast<int>(item.second);
    else if (key == "waypoints") config.waypoints = py::cast<int>(item.second);
    else if (key == "seed") config.seed = py::cast<std::uint64_t>(item.second);
    else if (key == "noise_on") config.noise_on = py::cast<bool>(item.second);
    else throw py::value_error("unknown planner option '" + key + "'");
  }
  return config;
}

TaskDemoSet demoSetFromFiles(const std::vector<std::string>& paths) {
  std::vector<Demo> demos;
  for (const auto& path : paths) {
    LoadedDemoFile loaded = loadDemoFile(path);
    if (loaded.segmented) {
      demos.push_back(std::move(*loaded.segmented));
    } else {
      Demo demo;
      demo.segments = segmentDemo(*loaded.raw);
      demo.final_state = loaded.raw->frames.back().poses;
      demos.push_back(std::move(demo));
    }
  }
  return buildTaskDemoSet(demos);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Intention-likelihood models learned from demonstrations and an "
      "anytime tree search that improvises feasible manipulation plans";

  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<ValidationError>(m, "ValidationError");
  py::register_exception<InfeasibleStartError>(m, "InfeasibleStartError");
  py::register_exception<NoFeasiblePlanError>(m, "NoFeasiblePlanError");

  py::class_<Pose>(m, "Pose")
      .def(py::init<>())
      .def(py::init([](const Vec3& t, const Eigen::Vector4d& wxyz) {
             return Pose(t, Quat(wxyz[0], wxyz[1], wxyz[2], wxyz[3]));
           }),
           py::arg("t"), py::arg("q"))
      .def_property_readonly(
          "t", [](const Pose& p) { return p.translation; })
      .def_property_readonly("q",
                             [](const Pose& p) {
                               return Eigen::Vector4d(
                                   p.rotation.w(), p.rotation.x(),
                                   p.rotation.y(), p.rotation.z());
                             })
      .def("apply", &Pose::apply, py::arg("point"))
      .def_static("identity", &Pose::identity)
      .def_static("from_translation",
                  py::overload_cast<const Vec3&>(&Pose::fromTranslation))
      .def_static("from_axis_angle", &Pose::fromAxisAngle, py::arg("axis"),
                  py::arg("angle"), py::arg("t") = Vec3(Vec3::Zero()))
      .def("__repr__", [](const Pose& p) {
        std::ostringstream os;
        os << "Pose(t=[" << p.translation.transpose() << "], q=["
           << p.rotation.w() << ", " << p.rotation.x() << ", "
           << p.rotation.y() << ", " << p.rotation.z() << "])";
        return os.str();
      });

  py::class_<PoseDistanceParams>(m, "PoseDistanceParams")
      .def(py::init<double, double>(), py::arg("sigma_t") = 0.02,
           py::arg("sigma_r") = 0.1)
      .def_readwrite("sigma_t", &PoseDistanceParams::sigma_t)
      .def_readwrite("sigma_r", &PoseDistanceParams::sigma_r);

  m.def("compose", &compose);
  m.def("inverse", &inverse);
  m.def("relative_pose", &relativePose, py::arg("ref"), py::arg("target"));
  m.def("pose_distance", &poseDistance, py::arg("a"), py::arg("b"),
        py::arg("params"));
  m.def("mean_pose",
        [](const std::vector<Pose>& poses) { return meanPose(poses); });

  py::class_<SceneSpec>(m, "SceneSpec")
      .def_readonly("objects", &SceneSpec::objects)
      .def_readonly("support_height", &SceneSpec::support_height)
      .def_readonly("reach_radius", &SceneSpec::reach_radius)
      .def_readonly("lift_height", &SceneSpec::lift_height);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("object_id", &Trajectory::object_id)
      .def_readonly("waypoints", &Trajectory::waypoints)
      .def_readonly("grasp_index", &Trajectory::grasp_index)
      .def_readonly("place_index", &Trajectory::place_index);

  py::class_<PlanStep>(m, "PlanStep")
      .def_readonly("action_id", &PlanStep::action_id)
      .def_readonly("template_id", &PlanStep::template_id)
      .def_readonly("object_id", &PlanStep::object_id)
      .def_readonly("goal_state", &PlanStep::goal_state)
      .def_readonly("trajectory", &PlanStep::trajectory);

  py::class_<Plan>(m, "Plan")
      .def_readonly("steps", &Plan::steps)
      .def_readonly("value", &Plan::value)
      .def_readonly("start_state", &Plan::start_state)
      .def_readonly("final_state", &Plan::final_state)
      .def_readonly("iterations_used", &Plan::iterations_used)
      .def("save", [](const Plan& plan, const std::string& path) {
        savePlan(plan, path);
      });

  py::class_<LearnedModel>(m, "LearnedModel")
      .def_readonly("object_ids", &LearnedModel::object_ids)
      .def_readonly("demo_count", &LearnedModel::demo_count)
      .def_readonly("psi_first_demo", &LearnedModel::psi_first_demo)
      .def_readonly("psi_demo_mean", &LearnedModel::psi_demo_mean)
      .def_property_readonly("relation_entropies",
                             [](const LearnedModel& model) {
                               py::dict out;
                               for (const auto& rel :
                                    model.intention.relations) {
                                 out[py::make_tuple(rel.object,
                                                    rel.reference)] =
                                     rel.entropy;
                               }
                               return out;
                             })
      .def_property_readonly("relation_weights",
                             [](const LearnedModel& model) {
                               py::dict out;
                               for (const auto& rel :
                                    model.intention.relations) {
                                 out[py::make_tuple(rel.object,
                                                    rel.reference)] =
                                     rel.weight;
                               }
                               return out;
                             })
      .def("save", [](const LearnedModel& model, const std::string& path) {
        saveModel(model, path);
      });

  m.def(
      "learn",
      [](const std::vector<std::string>& demo_paths, double sigma_t,
         double sigma_r, int entropy_samples, std::uint64_t seed) {
        return learnModel(demoSetFromFiles(demo_paths), {sigma_t, sigma_r},
                          entropy_samples, seed);
      },
      py::arg("demo_paths"), py::arg("sigma_t") = 0.02,
      py::arg("sigma_r") = 0.1, py::arg("entropy_samples") = 1000,
      py::arg("seed") = 0,
      "Learn intention and action models from demonstration files");

  m.def("load_model",
        [](const std::string& path) { return loadModel(path); });
  m.def("load_scene", [](const std::string& path) { return loadScene(path); });
  m.def("load_plan", [](const std::string& path) { return loadPlan(path); });
  m.def("load_start_state",
        [](const std::string& path) { return loadStartState(path); });

  m.def(
      "intention_likelihood",
      [](const LearnedModel& model, const WorldState& state) {
        return intentionLikelihood(model.intention, state);
      },
      py::arg("model"), py::arg("state"));

  m.def("state_feasible", &stateFeasible, py::arg("scene"), py::arg("state"));
  m.def("boxes_overlap", &boxesOverlap, py::arg("half_a"), py::arg("pose_a"),
        py::arg("half_b"), py::arg("pose_b"));

  m.def(
      "solve_task",
      [](const LearnedModel& model, const SceneSpec& scene,
         const WorldState& start, const py::kwargs& kwargs) {
        PlannerConfig config =
            resolvePlannerConfig(configFromKwargs(kwargs), model);
        return solveTask(model.intention, model.actions, scene, start, config);
      },
      py::arg("model"), py::arg("scene"), py::arg("start"),
      "Plan a feasible action sequence maximizing the task intention");

  m.def(
      "run_trials",
      [](const LearnedModel& model, const SceneSpec& scene, int n,
         std::uint64_t seed, const py::kwargs& kwargs) {
        RunReport report =
            runTrials(model, scene, n, seed, configFromKwargs(kwargs));
        py::dict out;
        out["trials"] = report.trials;
        out["full_successes"] = report.full_successes;
        out["partial_solutions"] = report.partial_solutions;
        out["failures"] = report.failures;
        py::list per_trial;
        for (const auto& trial : report.per_trial) {
          py::dict t;
          t["trial"] = trial.trial;
          t["classification"] = toString(trial.outcome);
          t["steps"] = trial.steps;
          t["wall_time_s"] = trial.wall_time_s;
          t["value"] = trial.value ? py::object(py::float_(*trial.value))
                                   : py::object(py::none());
          per_trial.append(std::move(t));
        }
        out["per_trial"] = per_trial;
        return out;
      },
      py::arg("model"), py::arg("scene"), py::arg("n"), py::arg("seed") = 0);

  m.def("render_state_svg", &renderStateSvg, py::arg("scene"),
        py::arg("state"));
  m.def("render_plan_svg", &renderPlanSvg, py::arg("scene"), py::arg("plan"));
}
