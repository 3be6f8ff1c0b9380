#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "improv/actions.hpp"
#include "improv/feasibility.hpp"
#include "improv/intention.hpp"
#include "improv/world.hpp"

namespace improv {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

enum class NodeKind { kActionSelection, kTemplateSelection, kGoalSelection };

/// One node of the three-layer search tree. Action-selection nodes carry a
/// state; template-selection nodes fix the action; goal-selection nodes fix
/// the template and hold the sampled goal states as children.
struct SearchNode {
  NodeKind kind = NodeKind::kActionSelection;
  WorldState state;        // action-selection nodes only (s_t)
  double psi = 0.0;        // cached intention likelihood of `state`
  int depth = 0;           // real actions from the root
  int action_index = -1;   // template/goal-selection nodes
  int template_index = -1; // goal-selection nodes
  double goal_probability = 1.0;  // action-selection children of goal nodes
  double value = kNegInf;
  int visits = 0;
  bool solved = false;
  bool expanded = false;
  bool terminal = false;   // no-op leaf
  int creation_index = 0;
  SearchNode* parent = nullptr;
  std::vector<std::unique_ptr<SearchNode>> children;
};

/// Value of an internal node recomputed from its children: max over child
/// values, minus the action cost at goal-selection nodes.
double backpropValue(const SearchNode& node, double action_cost);

/// A node is solved once every child is solved.
bool backpropSolved(const SearchNode& node);

struct PlannerConfig {
  int iterations = 512;        // K
  int goal_samples = 32;       // S
  double action_cost = -1.0;   // < 0: resolve to 0.05 * psi scale
  double tau0 = 0.0;           // <= 0: resolve to 0.05 * psi scale
  double cluster_cutoff = 0.0; // <= 0: resolve to 3 * sigma_t
  int max_depth = 0;           // <= 0: resolve to 2 * number of real actions
  int waypoints = 32;          // W
  std::uint64_t seed = 0;
  bool noise_on = true;

  void validateResolved() const;
};

struct PlanStep {
  std::string action_id;
  std::string template_id;
  ObjectId object_id;
  WorldState goal_state;
  std::optional<Trajectory> trajectory;
};

/// A recovered action sequence. `value` equals Psi(final_state) minus the
/// accumulated action costs.
struct Plan {
  std::vector<PlanStep> steps;
  double value = 0.0;
  WorldState start_state;
  WorldState final_state;
  int iterations_used = 0;
};

/// Source of goal candidates used at node expansion. The default draws from
/// the learned goal distributions; tests may inject fixed candidate lists.
class CandidateSource {
 public:
  virtual ~CandidateSource() = default;
  virtual std::vector<GoalCandidate> sample(const ActionModel& action,
                                            const ActionTemplate& tmpl,
                                            const WorldState& state,
                                            Rng& rng) const = 0;
};

class KdeCandidateSource : public CandidateSource {
 public:
  explicit KdeCandidateSource(GoalSamplingParams params)
      : params_(params) {}
  std::vector<GoalCandidate> sample(const ActionModel& action,
                                    const ActionTemplate& tmpl,
                                    const WorldState& state,
                                    Rng& rng) const override;

 private:
  GoalSamplingParams params_;
};

struct PlanCheck {
  bool feasible = false;
  int failing_step = -1;
};

/// Generates and checks each step's trajectory, chaining states. On success
/// the trajectories are attached to the plan.
PlanCheck checkFeasibility(Plan& plan, const SceneSpec& scene,
                           const PlannerConfig& config);

/// Samples an index with probability proportional to exp(value / tau).
int boltzmannPick(const std::vector<double>& values, double tau, Rng& rng);

/// The anytime task search: Boltzmann-guided selection, clustered-sample
/// expansion with lazy state checks, max-value backpropagation, greedy plan
/// recommendation and the infeasible-leaf repair loop.
class TreeSearch {
 public:
  using Evaluator = std::function<double(const WorldState&)>;

  TreeSearch(Evaluator psi, std::vector<ActionModel> actions, SceneSpec scene,
             WorldState start, PlannerConfig config,
             std::shared_ptr<const CandidateSource> candidates);

  /// Runs one select/expand/backpropagate iteration. Returns false (and does
  /// nothing) once the root is solved.
  bool step();

  /// Runs the full search: up to K iterations, then the repair loop until a
  /// trajectory-feasible plan emerges. Throws NoFeasiblePlanError when every
  /// terminal state has been demoted.
  Plan solve();

  struct Recommendation {
    Plan plan;
    SearchNode* leaf = nullptr;
  };

  /// Greedy max-value descent from the root; ties break toward the earliest
  /// created child. Throws if the root is unexpanded.
  Recommendation recommendBestPlan();

  /// Demotes a terminal or frontier leaf to -inf and backpropagates.
  void demote(SearchNode* leaf);

  const SearchNode& root() const { return *root_; }
  int iterationsUsed() const { return iterations_; }
  bool rootSolved() const { return root_->solved; }

  /// Full-tree audit: every internal node's value and solved flag must equal
  /// the backpropagation rule applied to its current children.
  bool audit() const;

 private:
  SearchNode* selectLeaf();
  void expand(SearchNode* leaf);
  void updateValues(SearchNode* from);
  SearchNode* addChild(SearchNode* parent, std::unique_ptr<SearchNode> child);

  Evaluator psi_;
  std::vector<ActionModel> actions_;  // real actions only
  SceneSpec scene_;
  WorldState start_;
  PlannerConfig config_;
  std::shared_ptr<const CandidateSource> candidates_;
  std::unique_ptr<SearchNode> root_;
  Rng rng_;
  int iterations_ = 0;
  int next_creation_index_ = 0;
};

/// End-to-end solve with the learned models (Alg. SolveTask). The start
/// state must be feasible.
Plan solveTask(const IntentionModel& intention,
               const std::vector<ActionModel>& actions, const SceneSpec& scene,
               const WorldState& start, const PlannerConfig& config);

}  // namespace improv
