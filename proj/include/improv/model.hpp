#pragma once

#include <cstdint>
#include <vector>

#include "improv/actions.hpp"
#include "improv/intention.hpp"
#include "improv/planner.hpp"

namespace improv {

/// Everything learned from one task's demonstrations: the intention model,
/// the per-object action models, and the Psi scale references used to
/// resolve planner defaults and classify trial outcomes.
struct LearnedModel {
  IntentionModel intention;
  std::vector<ActionModel> actions;
  std::vector<ObjectId> object_ids;
  int demo_count = 0;
  int entropy_samples = 1000;
  std::uint64_t entropy_seed = 0;
  double psi_first_demo = 0.0;
  double psi_demo_mean = 0.0;
};

LearnedModel learnModel(const TaskDemoSet& set,
                        const PoseDistanceParams& bandwidth,
                        int entropy_samples, std::uint64_t seed);

/// Fills unset planner config fields from the model: action cost and tau0
/// from the Psi scale, depth cap from the action count, cluster cutoff from
/// the bandwidth.
PlannerConfig resolvePlannerConfig(PlannerConfig config,
                                   const LearnedModel& model);

}  // namespace improv
