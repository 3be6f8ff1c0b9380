#include "improv/planner.hpp"

#include <algorithm>
#include <cmath>

#include "improv/errors.hpp"

namespace improv {

void PlannerConfig::validateResolved() const {
  if (iterations < 1) throw ValidationError("iteration budget must be >= 1");
  if (goal_samples < 1) throw ValidationError("goal sample count must be >= 1");
  if (action_cost < 0.0) throw ValidationError("action cost must be resolved (>= 0)");
  if (!(tau0 > 0.0)) throw ValidationError("tau0 must be resolved (> 0)");
  if (!(cluster_cutoff > 0.0)) {
    throw ValidationError("cluster cutoff must be resolved (> 0)");
  }
  if (max_depth < 1) throw ValidationError("max depth must be resolved (>= 1)");
  if (waypoints < 4) throw ValidationError("waypoint count must be >= 4");
}

double backpropValue(const SearchNode& node, double action_cost) {
  double best = kNegInf;
  for (const auto& child : node.children) best = std::max(best, child->value);
  if (node.kind == NodeKind::kGoalSelection) best -= action_cost;
  return best;
}

bool backpropSolved(const SearchNode& node) {
  for (const auto& child : node.children) {
    if (!child->solved) return false;
  }
  return true;
}

std::vector<GoalCandidate> KdeCandidateSource::sample(
    const ActionModel& action, const ActionTemplate& tmpl,
    const WorldState& state, Rng& rng) const {
  return sampleGoalCandidates(action, tmpl, state, params_, rng);
}

int boltzmannPick(const std::vector<double>& values, double tau, Rng& rng) {
  double best = *std::max_element(values.begin(), values.end());
  std::vector<double> cumulative(values.size());
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double w = values[i] == kNegInf ? 0.0 : std::exp((values[i] - best) / tau);
    total += w;
    cumulative[i] = total;
  }
  std::uniform_real_distribution<double> uniform(0.0, total);
  double u = uniform(rng);
  for (std::size_t i = 0; i < cumulative.size(); ++i) {
    if (u <= cumulative[i]) return static_cast<int>(i);
  }
  return static_cast<int>(values.size()) - 1;
}

TreeSearch::TreeSearch(Evaluator psi, std::vector<ActionModel> actions,
                       SceneSpec scene, WorldState start, PlannerConfig config,
                       std::shared_ptr<const CandidateSource> candidates)
    : psi_(std::move(psi)),
      scene_(std::move(scene)),
      start_(std::move(start)),
      config_(config),
      candidates_(std::move(candidates)),
      rng_(config.seed) {
  config_.validateResolved();
  if (!candidates_) throw ValidationError("candidate source required");
  for (ActionModel& action : actions) {
    if (!action.is_noop) actions_.push_back(std::move(action));
  }
  if (actions_.empty()) {
    throw ValidationError("the action set holds no real actions");
  }
  root_ = std::make_unique<SearchNode>();
  root_->kind = NodeKind::kActionSelection;
  root_->state = start_;
  root_->psi = psi_(start_);
  root_->value = root_->psi;
  root_->creation_index = next_creation_index_++;
}

SearchNode* TreeSearch::addChild(SearchNode* parent,
                                 std::unique_ptr<SearchNode> child) {
  child->parent = parent;
  child->creation_index = next_creation_index_++;
  parent->children.push_back(std::move(child));
  return parent->children.back().get();
}

SearchNode* TreeSearch::selectLeaf() {
  SearchNode* node = root_.get();
  node->visits += 1;
  while (node->expanded && !node->terminal) {
    std::vector<SearchNode*> open;
    open.reserve(node->children.size());
    for (const auto& child : node->children) {
      if (!child->solved) open.push_back(child.get());
    }
    if (open.empty()) return node;  // unreachable while the root is unsolved

    SearchNode* chosen = nullptr;
    if (node->kind == NodeKind::kGoalSelection) {
      // Children are drawn by their goal-state probability.
      double total = 0.0;
      for (SearchNode* c : open) total += c->goal_probability;
      std::uniform_real_distribution<double> uniform(0.0, total);
      double u = uniform(rng_);
      double acc = 0.0;
      chosen = open.back();
      for (SearchNode* c : open) {
        acc += c->goal_probability;
        if (u <= acc) {
          chosen = c;
          break;
        }
      }
    } else {
      double tau = config_.tau0 /
                   std::log(std::exp(1.0) + static_cast<double>(node->visits));
      std::vector<double> values;
      values.reserve(open.size());
      for (SearchNode* c : open) values.push_back(c->value);
      chosen = open[static_cast<std::size_t>(boltzmannPick(values, tau, rng_))];
    }
    node = chosen;
    node->visits += 1;
  }
  return node;
}

void TreeSearch::expand(SearchNode* leaf) {
  leaf->expanded = true;

  // Lazy feasibility: infeasible states are pruned only once selected.
  if (!stateFeasible(scene_, leaf->state)) {
    leaf->value = kNegInf;
    leaf->solved = true;
    return;
  }

  if (leaf->depth < config_.max_depth) {
    for (std::size_t a = 0; a < actions_.size(); ++a) {
      const ActionModel& action = actions_[a];
      auto ts = std::make_unique<SearchNode>();
      ts->kind = NodeKind::kTemplateSelection;
      ts->action_index = static_cast<int>(a);
      ts->depth = leaf->depth;
      SearchNode* template_node = addChild(leaf, std::move(ts));

      for (std::size_t t = 0; t < action.templates.size(); ++t) {
        auto gs = std::make_unique<SearchNode>();
        gs->kind = NodeKind::kGoalSelection;
        gs->action_index = static_cast<int>(a);
        gs->template_index = static_cast<int>(t);
        gs->depth = leaf->depth;
        SearchNode* goal_node = addChild(template_node, std::move(gs));

        auto candidates = candidates_->sample(action, action.templates[t],
                                              leaf->state, rng_);
        for (GoalCandidate& cand : candidates) {
          auto as = std::make_unique<SearchNode>();
          as->kind = NodeKind::kActionSelection;
          as->state = std::move(cand.state);
          as->psi = psi_(as->state);
          as->value = as->psi;  // value initialized to the intention likelihood
          as->goal_probability = cand.probability;
          as->depth = leaf->depth + 1;
          addChild(goal_node, std::move(as));
        }
        goal_node->value = backpropValue(*goal_node, config_.action_cost);
        goal_node->solved = backpropSolved(*goal_node);
      }
      template_node->value = backpropValue(*template_node, config_.action_cost);
      template_node->solved = backpropSolved(*template_node);
    }
  }

  // The zero-cost no-op freezes the current state and terminates the branch.
  auto noop = std::make_unique<SearchNode>();
  noop->kind = NodeKind::kActionSelection;
  noop->state = leaf->state;
  noop->psi = leaf->psi;
  noop->value = leaf->psi;
  noop->depth = leaf->depth;
  noop->terminal = true;
  noop->solved = true;
  noop->expanded = true;
  addChild(leaf, std::move(noop));
}

void TreeSearch::updateValues(SearchNode* from) {
  for (SearchNode* node = from; node != nullptr; node = node->parent) {
    if (node->children.empty()) continue;  // leaves keep their own value
    node->value = backpropValue(*node, config_.action_cost);
    node->solved = backpropSolved(*node);
  }
}

bool TreeSearch::step() {
  if (root_->solved) return false;
  SearchNode* leaf = selectLeaf();
  expand(leaf);
  updateValues(leaf);
  iterations_ += 1;
  return true;
}

TreeSearch::Recommendation TreeSearch::recommendBestPlan() {
  if (!root_->expanded) {
    throw Error("recommendBestPlan: the root has not been expanded");
  }
  auto argmax = [](SearchNode* node) {
    SearchNode* best = nullptr;
    for (const auto& child : node->children) {
      if (best == nullptr || child->value > best->value) best = child.get();
    }
    return best;
  };

  Plan plan;
  plan.start_state = root_->state;
  SearchNode* node = root_.get();
  while (node->expanded && !node->terminal) {
    SearchNode* pick = argmax(node);
    if (pick->kind == NodeKind::kActionSelection) {
      node = pick;  // the no-op child: stop here
      continue;
    }
    SearchNode* goal_node = argmax(pick);
    SearchNode* next = argmax(goal_node);
    const ActionModel& action =
        actions_[static_cast<std::size_t>(pick->action_index)];
    PlanStep step;
    step.action_id = action.action_id;
    step.template_id =
        action.templates[static_cast<std::size_t>(goal_node->template_index)]
            .template_id;
    step.object_id = action.object_id;
    step.goal_state = next->state;
    plan.steps.push_back(std::move(step));
    node = next;
  }
  plan.final_state = node->state;
  plan.value = node->value == kNegInf
                   ? kNegInf
                   : node->psi - static_cast<double>(plan.steps.size()) *
                                     config_.action_cost;
  plan.iterations_used = iterations_;
  return {std::move(plan), node};
}

void TreeSearch::demote(SearchNode* leaf) {
  if (leaf == nullptr) throw ValidationError("cannot demote a null leaf");
  leaf->value = kNegInf;
  leaf->solved = true;
  updateValues(leaf->parent);
}

Plan TreeSearch::solve() {
  if (!stateFeasible(scene_, start_)) {
    throw InfeasibleStartError("the start state is infeasible");
  }
  while (iterations_ < config_.iterations && !root_->solved) step();

  // Repair: keep recommending, demoting the end leaf of every plan whose
  // trajectories fail, until a feasible plan remains.
  for (;;) {
    if (root_->value == kNegInf) {
      throw NoFeasiblePlanError(
          "no feasible plan: every terminal state was demoted");
    }
    Recommendation rec = recommendBestPlan();
    if (rec.plan.value == kNegInf) {
      throw NoFeasiblePlanError(
          "no feasible plan: every terminal state was demoted");
    }
    PlanCheck check = checkFeasibility(rec.plan, scene_, config_);
    if (check.feasible) return std::move(rec.plan);
    demote(rec.leaf);
  }
}

bool TreeSearch::audit() const {
  std::function<bool(const SearchNode&)> visit =
      [&](const SearchNode& node) -> bool {
    if (node.children.empty()) return true;
    if (node.value != backpropValue(node, config_.action_cost)) return false;
    if (node.solved != backpropSolved(node)) return false;
    for (const auto& child : node.children) {
      if (!visit(*child)) return false;
    }
    return true;
  };
  return visit(*root_);
}

PlanCheck checkFeasibility(Plan& plan, const SceneSpec& scene,
                           const PlannerConfig& config) {
  WorldState current = plan.start_state;
  std::vector<Trajectory> trajectories;
  trajectories.reserve(plan.steps.size());
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    PlanStep& step = plan.steps[i];
    auto goal_it = step.goal_state.find(step.object_id);
    if (goal_it == step.goal_state.end()) {
      throw ValidationError("plan step " + std::to_string(i) +
                            " lacks the moved object's goal pose");
    }
    Trajectory traj = generateTrajectory(scene, current, step.object_id,
                                         goal_it->second, config.waypoints);
    TrajectoryCheck check = trajectoryFeasible(scene, current, traj);
    if (!check.feasible) return {false, static_cast<int>(i)};
    trajectories.push_back(std::move(traj));
    current = step.goal_state;  // the end pose seeds the next motion
  }
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    plan.steps[i].trajectory = std::move(trajectories[i]);
  }
  return {true, -1};
}

Plan solveTask(const IntentionModel& intention,
               const std::vector<ActionModel>& actions, const SceneSpec& scene,
               const WorldState& start, const PlannerConfig& config) {
  GoalSamplingParams sampling;
  sampling.sample_count = config.goal_samples;
  sampling.cluster_cutoff = config.cluster_cutoff;
  sampling.bandwidth = intention.bandwidth;
  sampling.noise_on = config.noise_on;
  auto source = std::make_shared<KdeCandidateSource>(sampling);

  TreeSearch search(
      [&intention](const WorldState& s) {
        return intentionLikelihood(intention, s);
      },
      actions, scene, start, config, std::move(source));
  return search.solve();
}

}  // namespace improv
