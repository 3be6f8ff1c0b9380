#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "improv/planner.hpp"

namespace improv {

/// A finite planning instance: fixed candidate goal poses per
/// (action, template) instead of sampled ones, so exhaustive enumeration and
/// the tree search cover the same space.
struct DiscretizedProblem {
  TreeSearch::Evaluator psi;
  std::vector<ActionModel> actions;
  std::map<std::pair<std::string, std::string>, std::vector<Pose>> candidates;
  SceneSpec scene;
  WorldState start;
  int max_steps = 2;       // T_max
  double action_cost = 0.0;
  int waypoints = 8;

  /// Number of action/template/candidate sequences of length <= max_steps.
  double pathCount() const;
};

inline constexpr double kOraclePathLimit = 1e6;

struct OracleResult {
  double value = kNegInf;
  Plan plan;
};

/// Exhaustive depth-first maximization of Psi(s_T) - T * cost over all
/// feasible plans of length <= max_steps, under the same state and
/// trajectory filters as the tree search. Deterministic and seed-free.
OracleResult enumerateOptimal(const DiscretizedProblem& problem);

/// Candidate source that substitutes the fixed lists for sampling, with
/// uniform candidate probabilities. Throws ValidationError unless every
/// (action, template) pair is covered.
std::shared_ptr<const CandidateSource> makeInjectedCandidateSource(
    const std::vector<ActionModel>& actions,
    const std::map<std::pair<std::string, std::string>, std::vector<Pose>>&
        candidates);

}  // namespace improv
