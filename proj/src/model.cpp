#include "improv/model.hpp"

#include <algorithm>

#include "improv/errors.hpp"

namespace improv {

LearnedModel learnModel(const TaskDemoSet& set,
                        const PoseDistanceParams& bandwidth,
                        int entropy_samples, std::uint64_t seed) {
  LearnedModel model;
  model.intention = buildIntentionModel(set, bandwidth, entropy_samples, seed);
  model.actions = buildActionModels(set);
  model.object_ids = set.object_ids;
  model.demo_count = set.demoCount();
  model.entropy_samples = entropy_samples;
  model.entropy_seed = seed;

  double sum = 0.0;
  for (const Demo& demo : set.demos) {
    sum += intentionLikelihood(model.intention, demo.final_state);
  }
  model.psi_first_demo =
      intentionLikelihood(model.intention, set.demos.front().final_state);
  model.psi_demo_mean = sum / static_cast<double>(set.demos.size());
  return model;
}

PlannerConfig resolvePlannerConfig(PlannerConfig config,
                                   const LearnedModel& model) {
  double psi_scale = model.psi_first_demo;
  if (config.action_cost < 0.0) config.action_cost = 0.05 * psi_scale;
  if (config.tau0 <= 0.0) config.tau0 = 0.05 * psi_scale;
  if (config.cluster_cutoff <= 0.0) {
    config.cluster_cutoff = 3.0 * model.intention.bandwidth.sigma_t;
  }
  if (config.max_depth <= 0) {
    int real = static_cast<int>(std::count_if(
        model.actions.begin(), model.actions.end(),
        [](const ActionModel& a) { return !a.is_noop; }));
    config.max_depth = std::max(1, 2 * real);
  }
  return config;
}

}  // namespace improv
