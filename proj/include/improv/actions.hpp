#pragma once

#include <string>
#include <vector>

#include "improv/demonstrations.hpp"
#include "improv/random.hpp"
#include "improv/world.hpp"

namespace improv {

/// One interpretation of an action: move the object so it reaches a
/// demonstrated pose relative to `reference_object`. The self template uses
/// the object's own pre-action pose as reference.
struct ActionTemplate {
  std::string template_id;
  ObjectId reference_object;
  std::vector<Pose> samples;
};

/// Action a: manipulate one object, with one template per candidate
/// reference frame. The no-op action carries no templates and terminates a
/// plan without changing the state.
struct ActionModel {
  std::string action_id;
  ObjectId object_id;
  std::vector<ActionTemplate> templates;
  bool is_noop = false;
};

inline constexpr const char* kNoopActionId = "noop";

/// A clustered goal state s_{t+1} for one action, with probability
/// proportional to the cluster size.
struct GoalCandidate {
  WorldState state;
  double probability = 0.0;
  int cluster_size = 0;
};

/// One model per object that was manipulated in the demos (templates: every
/// other object plus self), plus the terminal no-op model.
std::vector<ActionModel> buildActionModels(const TaskDemoSet& set);

/// Uniform template prior 1/|templates|. Throws on the no-op model.
double templatePrior(const ActionModel& model);

/// Complete-linkage agglomerative clustering under the meters-equivalent
/// pose distance (sigma_t * normalized distance). Returns clusters of input
/// indices, each sorted ascending, ordered by smallest member.
std::vector<std::vector<int>> completeLinkageClusters(
    const std::vector<Pose>& poses, const PoseDistanceParams& bandwidth,
    double cutoff);

struct GoalSamplingParams {
  int sample_count = 32;       // S
  double cluster_cutoff = 0.06;  // meters-equivalent
  PoseDistanceParams bandwidth;
  bool noise_on = true;
};

/// Draws S template samples (with replacement, optionally kernel-perturbed),
/// maps them through the reference pose in `state`, clusters them, and emits
/// one candidate per cluster with the mean pose. Deterministic given the rng
/// state.
std::vector<GoalCandidate> sampleGoalCandidates(const ActionModel& model,
                                                const ActionTemplate& tmpl,
                                                const WorldState& state,
                                                const GoalSamplingParams& params,
                                                Rng& rng);

std::vector<GoalCandidate> sampleGoalCandidates(const ActionModel& model,
                                                const ActionTemplate& tmpl,
                                                const WorldState& state,
                                                const GoalSamplingParams& params,
                                                std::uint64_t seed);

}  // namespace improv
