#include "improv/oracle.hpp"

#include <cmath>

#include "improv/errors.hpp"

namespace improv {

namespace {

class InjectedCandidateSource : public CandidateSource {
 public:
  InjectedCandidateSource(
      std::map<std::pair<std::string, std::string>, std::vector<Pose>> lists)
      : lists_(std::move(lists)) {}

  std::vector<GoalCandidate> sample(const ActionModel& action,
                                    const ActionTemplate& tmpl,
                                    const WorldState& state,
                                    Rng&) const override {
    const auto& poses = lists_.at({action.action_id, tmpl.template_id});
    std::vector<GoalCandidate> out;
    out.reserve(poses.size());
    for (const Pose& pose : poses) {
      GoalCandidate cand;
      cand.state = state;
      cand.state[action.object_id] = pose;
      cand.cluster_size = 1;
      cand.probability = 1.0 / static_cast<double>(poses.size());
      out.push_back(std::move(cand));
    }
    return out;
  }

 private:
  std::map<std::pair<std::string, std::string>, std::vector<Pose>> lists_;
};

}  // namespace

double DiscretizedProblem::pathCount() const {
  double branch = 0.0;
  for (const ActionModel& action : actions) {
    if (action.is_noop) continue;
    for (const ActionTemplate& tmpl : action.templates) {
      auto it = candidates.find({action.action_id, tmpl.template_id});
      if (it != candidates.end()) {
        branch += static_cast<double>(it->second.size());
      }
    }
  }
  double total = 1.0;
  double level = 1.0;
  for (int depth = 1; depth <= max_steps; ++depth) {
    level *= branch;
    total += level;
  }
  return total;
}

OracleResult enumerateOptimal(const DiscretizedProblem& problem) {
  if (problem.pathCount() > kOraclePathLimit) {
    throw ValidationError("discretized instance exceeds the path-count guard");
  }
  if (!stateFeasible(problem.scene, problem.start)) {
    throw InfeasibleStartError("the start state is infeasible");
  }

  OracleResult result;
  result.plan.start_state = problem.start;
  result.plan.final_state = problem.start;
  std::vector<PlanStep> stack;

  std::function<void(const WorldState&, int)> visit =
      [&](const WorldState& state, int depth) {
        double value =
            problem.psi(state) - depth * problem.action_cost;
        if (value > result.value) {
          result.value = value;
          result.plan.steps = stack;
          result.plan.final_state = state;
          result.plan.value = value;
        }
        if (depth == problem.max_steps) return;
        for (const ActionModel& action : problem.actions) {
          if (action.is_noop) continue;
          for (const ActionTemplate& tmpl : action.templates) {
            auto it =
                problem.candidates.find({action.action_id, tmpl.template_id});
            if (it == problem.candidates.end()) continue;
            for (const Pose& goal : it->second) {
              Trajectory traj = generateTrajectory(
                  problem.scene, state, action.object_id, goal,
                  problem.waypoints);
              if (!trajectoryFeasible(problem.scene, state, traj).feasible) {
                continue;
              }
              WorldState next = state;
              next[action.object_id] = goal;
              stack.push_back({action.action_id, tmpl.template_id,
                               action.object_id, next, std::nullopt});
              visit(next, depth + 1);
              stack.pop_back();
            }
          }
        }
      };
  visit(problem.start, 0);

  PlannerConfig config;
  config.action_cost = problem.action_cost;
  config.tau0 = 1.0;
  config.cluster_cutoff = 1.0;
  config.max_depth = std::max(1, problem.max_steps);
  config.waypoints = problem.waypoints;
  PlanCheck check = checkFeasibility(result.plan, problem.scene, config);
  if (!check.feasible) {
    throw Error("oracle internal error: the optimal plan failed re-checking");
  }
  return result;
}

std::shared_ptr<const CandidateSource> makeInjectedCandidateSource(
    const std::vector<ActionModel>& actions,
    const std::map<std::pair<std::string, std::string>, std::vector<Pose>>&
        candidates) {
  for (const ActionModel& action : actions) {
    if (action.is_noop) continue;
    for (const ActionTemplate& tmpl : action.templates) {
      auto it = candidates.find({action.action_id, tmpl.template_id});
      if (it == candidates.end() || it->second.empty()) {
        throw ValidationError("injected candidates missing for action '" +
                              action.action_id + "', template '" +
                              tmpl.template_id + "'");
      }
    }
  }
  return std::make_shared<InjectedCandidateSource>(candidates);
}

}  // namespace improv
