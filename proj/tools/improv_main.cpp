// Command-line front end: learn models from demonstration files, plan from a
// scene and start state, run randomized trials, render states/plans to SVG.
//
// Exit codes: 0 ok, 1 usage or parse error, 2 no feasible plan,
// 3 infeasible start state.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "improv/errors.hpp"
#include "improv/model.hpp"
#include "improv/oracle.hpp"
#include "improv/planner.hpp"
#include "improv/render.hpp"
#include "improv/serialization.hpp"
#include "improv/trials.hpp"

namespace {

using improv::LearnedModel;
using improv::PlannerConfig;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoPlan = 2;
constexpr int kExitInfeasibleStart = 3;

struct CommonOptions {
  std::uint64_t seed = 0;
  int iterations = 512;
  int samples = 32;
  double action_cost = -1.0;
  double tau0 = 0.0;
  double cluster_cutoff = 0.0;
  double sigma_t = 0.02;
  double sigma_r = 0.1;
  int max_depth = 0;
  int waypoints = 32;
  bool no_noise = false;
  int entropy_samples = 1000;
  std::string config_path;
  std::string out_path;
};

void addPlannerFlags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--seed", opt.seed, "Random seed");
  cmd->add_option("--iterations", opt.iterations, "Search iteration budget K");
  cmd->add_option("--samples", opt.samples, "Goal samples per template S");
  cmd->add_option("--action-cost", opt.action_cost,
                  "Constant per-action cost (default: 5% of the demo goal "
                  "likelihood)");
  cmd->add_option("--tau0", opt.tau0, "Initial Boltzmann temperature");
  cmd->add_option("--cluster-cutoff", opt.cluster_cutoff,
                  "Goal clustering cutoff in meters-equivalent");
  cmd->add_option("--max-depth", opt.max_depth, "Plan length cap");
  cmd->add_option("--waypoints", opt.waypoints, "Trajectory waypoint count");
  cmd->add_flag("--no-noise", opt.no_noise,
                "Draw goals from the raw demonstration poses without kernel "
                "noise");
  cmd->add_option("--config", opt.config_path,
                  "JSON config file (same keys as the flags; flags win)");
}

void addBandwidthFlags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--sigma-t", opt.sigma_t, "Translation bandwidth, meters");
  cmd->add_option("--sigma-r", opt.sigma_r, "Rotation bandwidth, radians");
}

// Precedence: flags > config file > defaults. The config file uses the flag
// spellings as keys.
void applyConfigFile(CLI::App* cmd, CommonOptions& opt) {
  if (opt.config_path.empty()) return;
  std::ifstream in(opt.config_path);
  if (!in) {
    throw improv::ParseError("cannot open config file '" + opt.config_path +
                             "'");
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw improv::ParseError("config file '" + opt.config_path +
                             "': " + e.what());
  }
  auto flagUnset = [&](const std::string& name) {
    auto* o = cmd->get_option_no_throw(name);
    return o != nullptr && o->count() == 0;
  };
  auto pull = [&](const char* key, auto& target) {
    std::string flag = std::string("--") + key;
    if (j.contains(key) && flagUnset(flag)) {
      target = j[key].get<std::decay_t<decltype(target)>>();
    }
  };
  pull("seed", opt.seed);
  pull("iterations", opt.iterations);
  pull("samples", opt.samples);
  pull("action-cost", opt.action_cost);
  pull("tau0", opt.tau0);
  pull("cluster-cutoff", opt.cluster_cutoff);
  pull("sigma-t", opt.sigma_t);
  pull("sigma-r", opt.sigma_r);
  pull("max-depth", opt.max_depth);
  pull("waypoints", opt.waypoints);
  pull("no-noise", opt.no_noise);
  pull("entropy-samples", opt.entropy_samples);
}

PlannerConfig plannerConfigFrom(const CommonOptions& opt) {
  PlannerConfig config;
  config.iterations = opt.iterations;
  config.goal_samples = opt.samples;
  config.action_cost = opt.action_cost;
  config.tau0 = opt.tau0;
  config.cluster_cutoff = opt.cluster_cutoff;
  config.max_depth = opt.max_depth;
  config.waypoints = opt.waypoints;
  config.seed = opt.seed;
  config.noise_on = !opt.no_noise;
  return config;
}

improv::TaskDemoSet loadDemoSet(const std::vector<std::string>& demo_paths) {
  std::vector<improv::Demo> demos;
  for (const std::string& path : demo_paths) {
    improv::LoadedDemoFile loaded = improv::loadDemoFile(path);
    if (loaded.segmented) {
      demos.push_back(std::move(*loaded.segmented));
    } else {
      improv::Demo demo;
      demo.segments = improv::segmentDemo(*loaded.raw);
      if (demo.segments.empty()) {
        throw improv::ValidationError("demo file '" + path +
                                      "' holds no detectable manipulation");
      }
      demo.final_state = loaded.raw->frames.back().poses;
      demos.push_back(std::move(demo));
    }
  }
  return improv::buildTaskDemoSet(demos);
}

int cmdLearn(const std::vector<std::string>& demo_paths,
             const std::string& scene_path, const CommonOptions& opt) {
  improv::TaskDemoSet set = loadDemoSet(demo_paths);
  if (!scene_path.empty()) {
    improv::SceneSpec scene = improv::loadScene(scene_path);
    for (const auto& id : set.object_ids) {
      if (scene.objects.find(id) == scene.objects.end()) {
        throw improv::ValidationError("scene file lacks demo object '" + id +
                                      "'");
      }
    }
  }
  LearnedModel model = improv::learnModel(
      set, {opt.sigma_t, opt.sigma_r}, opt.entropy_samples, opt.seed);

  std::printf("learned %d relations from %d demos (%zu objects)\n",
              static_cast<int>(model.intention.relations.size()),
              model.demo_count, model.object_ids.size());
  std::printf("%-14s %-14s %14s %14s\n", "object", "reference",
              "entropy[nats]", "weight");
  for (const auto& rel : model.intention.relations) {
    std::printf("%-14s %-14s %14.6f %14.6f\n", rel.object.c_str(),
                rel.reference.c_str(), rel.entropy, rel.weight);
  }
  std::printf("eta = %.9g, eps_H = %.9g\n", model.intention.eta,
              model.intention.eps_h);
  std::printf("psi(demo goals): first = %.9g, mean = %.9g\n",
              model.psi_first_demo, model.psi_demo_mean);

  improv::saveModel(model, opt.out_path);
  std::printf("model written to %s\n", opt.out_path.c_str());
  return kExitOk;
}

int cmdPlan(const std::string& model_path, const std::string& scene_path,
            const std::string& start_path, const CommonOptions& opt) {
  LearnedModel model = improv::loadModel(model_path);
  improv::SceneSpec scene = improv::loadScene(scene_path);
  improv::WorldState start = improv::loadStartState(start_path);
  PlannerConfig config =
      improv::resolvePlannerConfig(plannerConfigFrom(opt), model);

  improv::Plan plan =
      improv::solveTask(model.intention, model.actions, scene, start, config);
  if (!opt.out_path.empty()) improv::savePlan(plan, opt.out_path);

  std::printf("plan value %.9g after %d iterations\n", plan.value,
              plan.iterations_used);
  if (plan.steps.empty()) {
    std::printf("0 steps: the start state already suits the task\n");
  }
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const auto& step = plan.steps[i];
    std::printf("step %zu: move %s (template %s)\n", i + 1,
                step.action_id.c_str(), step.template_id.c_str());
  }
  if (!opt.out_path.empty()) {
    std::printf("plan written to %s\n", opt.out_path.c_str());
  }
  return kExitOk;
}

int cmdTrials(const std::string& model_path, const std::string& scene_path,
              int n, const CommonOptions& opt) {
  LearnedModel model = improv::loadModel(model_path);
  improv::SceneSpec scene = improv::loadScene(scene_path);
  PlannerConfig config = plannerConfigFrom(opt);

  improv::RunReport report =
      improv::runTrials(model, scene, n, opt.seed, config);

  std::printf("trials: %d  full: %d  partial: %d  failures: %d\n",
              report.trials, report.full_successes, report.partial_solutions,
              report.failures);
  for (const auto& trial : report.per_trial) {
    std::printf("  trial %2d: %-7s steps=%d value=%s wall=%.3fs\n",
                trial.trial, improv::toString(trial.outcome), trial.steps,
                trial.value ? std::to_string(*trial.value).c_str() : "n/a",
                trial.wall_time_s);
  }

  if (!opt.out_path.empty()) {
    json per_trial = json::array();
    for (const auto& trial : report.per_trial) {
      json t{{"trial", trial.trial},
             {"classification", improv::toString(trial.outcome)},
             {"steps", trial.steps},
             {"wall_time_s", trial.wall_time_s}};
      t["value"] = trial.value ? json(*trial.value) : json(nullptr);
      t["psi_final"] = trial.psi_final ? json(*trial.psi_final) : json(nullptr);
      per_trial.push_back(std::move(t));
    }
    json j{{"trials", report.trials},
           {"full_successes", report.full_successes},
           {"partial_solutions", report.partial_solutions},
           {"failures", report.failures},
           {"per_trial", per_trial}};
    std::ofstream out(opt.out_path);
    if (!out) {
      throw improv::ParseError("cannot write report '" + opt.out_path + "'");
    }
    out << j.dump(2) << '\n';
    std::printf("report written to %s\n", opt.out_path.c_str());
  }
  return kExitOk;
}

int cmdRender(const std::string& scene_path, const std::string& input_path,
              const CommonOptions& opt) {
  improv::SceneSpec scene = improv::loadScene(scene_path);

  std::ifstream in(input_path);
  if (!in) {
    throw improv::ParseError("cannot open input '" + input_path + "'");
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw improv::ParseError("input '" + input_path + "': " + e.what());
  }

  std::string svg;
  if (j.contains("steps")) {
    svg = improv::renderPlanSvg(scene, improv::loadPlan(input_path));
  } else {
    svg = improv::renderStateSvg(scene, improv::loadStartState(input_path));
  }
  std::ofstream out(opt.out_path);
  if (!out) {
    throw improv::ParseError("cannot write SVG '" + opt.out_path + "'");
  }
  out << svg;
  std::printf("rendered to %s\n", opt.out_path.c_str());
  return kExitOk;
}

int cmdOracle(const std::string& model_path, const std::string& scene_path,
              const std::string& start_path,
              const std::string& candidates_path, int max_steps,
              const CommonOptions& opt) {
  LearnedModel model = improv::loadModel(model_path);

  improv::DiscretizedProblem problem;
  problem.scene = improv::loadScene(scene_path);
  problem.start = improv::loadStartState(start_path);
  problem.actions = model.actions;
  problem.max_steps = max_steps;
  problem.waypoints = opt.waypoints;
  PlannerConfig config =
      improv::resolvePlannerConfig(plannerConfigFrom(opt), model);
  problem.action_cost = config.action_cost;
  problem.psi = [&model](const improv::WorldState& s) {
    return improv::intentionLikelihood(model.intention, s);
  };

  std::ifstream in(candidates_path);
  if (!in) {
    throw improv::ParseError("cannot open candidates '" + candidates_path +
                             "'");
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw improv::ParseError("candidates '" + candidates_path +
                             "': " + e.what());
  }
  for (const auto& [action, templates] : j.items()) {
    for (const auto& [tmpl, poses] : templates.items()) {
      for (const json& p : poses) {
        problem.candidates[{action, tmpl}].push_back(improv::poseFromJson(p));
      }
    }
  }

  improv::OracleResult result = improv::enumerateOptimal(problem);
  std::printf("oracle optimum %.9g with %zu steps\n", result.value,
              result.plan.steps.size());
  if (!opt.out_path.empty()) {
    improv::savePlan(result.plan, opt.out_path);
    std::printf("plan written to %s\n", opt.out_path.c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Learns a task's intention model from demonstrations and plans feasible "
      "action sequences that reproduce it in new scenes"};
  app.require_subcommand(1);

  CommonOptions opt;

  // learn
  std::vector<std::string> demo_paths;
  std::string scene_path, model_path, start_path, input_path, candidates_path;
  int trial_count = 50;
  int oracle_steps = 2;

  CLI::App* learn = app.add_subcommand(
      "learn", "Learn intention and action models from demo files");
  learn->add_option("demos", demo_paths, "Demonstration JSON files")
      ->required()
      ->expected(-1);
  learn->add_option("--scene", scene_path, "Scene file for id validation");
  learn->add_option("--out", opt.out_path, "Output model file")->required();
  learn->add_option("--seed", opt.seed, "Entropy estimation seed");
  learn->add_option("--entropy-samples", opt.entropy_samples,
                    "Monte Carlo samples per relation entropy");
  learn->add_option("--config", opt.config_path, "JSON config file");
  addBandwidthFlags(learn, opt);

  CLI::App* plan = app.add_subcommand(
      "plan", "Search a feasible plan maximizing the task intention");
  plan->add_option("--model", model_path, "Learned model file")->required();
  plan->add_option("--scene", scene_path, "Scene file")->required();
  plan->add_option("--start", start_path, "Start state file")->required();
  plan->add_option("--out", opt.out_path, "Output plan file");
  addPlannerFlags(plan, opt);

  CLI::App* trials = app.add_subcommand(
      "trials", "Run randomized planning trials from feasible start states");
  trials->add_option("--model", model_path, "Learned model file")->required();
  trials->add_option("--scene", scene_path, "Scene file")->required();
  trials->add_option("-n,--trials", trial_count, "Number of trials");
  trials->add_option("--out", opt.out_path, "Output report file");
  addPlannerFlags(trials, opt);

  CLI::App* render = app.add_subcommand(
      "render", "Render a state or plan file to a top-down SVG");
  render->add_option("--scene", scene_path, "Scene file")->required();
  render->add_option("--input", input_path, "State or plan file")->required();
  render->add_option("--out", opt.out_path, "Output SVG file")->required();

  // Debugging aid: exhaustive enumeration over fixed candidate lists.
  CLI::App* oracle = app.add_subcommand(
      "oracle", "Exhaustive baseline over injected goal candidates");
  oracle->group("");
  oracle->add_option("--model", model_path, "Learned model file")->required();
  oracle->add_option("--scene", scene_path, "Scene file")->required();
  oracle->add_option("--start", start_path, "Start state file")->required();
  oracle->add_option("--candidates", candidates_path,
                     "JSON {action: {template: [poses]}}")
      ->required();
  oracle->add_option("--max-steps", oracle_steps, "Horizon bound");
  oracle->add_option("--out", opt.out_path, "Output plan file");
  addPlannerFlags(oracle, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    applyConfigFile(active, opt);
    if (learn->parsed()) return cmdLearn(demo_paths, scene_path, opt);
    if (plan->parsed()) return cmdPlan(model_path, scene_path, start_path, opt);
    if (trials->parsed()) {
      return cmdTrials(model_path, scene_path, trial_count, opt);
    }
    if (render->parsed()) return cmdRender(scene_path, input_path, opt);
    if (oracle->parsed()) {
      return cmdOracle(model_path, scene_path, start_path, candidates_path,
                       oracle_steps, opt);
    }
    return kExitUsage;
  } catch (const improv::InfeasibleStartError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInfeasibleStart;
  } catch (const improv::NoFeasiblePlanError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNoPlan;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
}
