#include "improv/actions.hpp"

#include <algorithm>
#include <limits>

#include "improv/errors.hpp"

namespace improv {

std::vector<ActionModel> buildActionModels(const TaskDemoSet& set) {
  auto samples = extractActionSamples(set);
  std::vector<ActionModel> models;
  for (const ObjectId& object : set.object_ids) {
    auto it = samples.find(object);
    if (it == samples.end()) continue;  // never manipulated
    ActionModel model;
    model.action_id = object;
    model.object_id = object;
    for (const ObjectId& ref : set.object_ids) {
      if (ref == object) continue;
      model.templates.push_back({ref, ref, it->second.at(ref)});
    }
    model.templates.push_back(
        {kSelfTemplateId, object, it->second.at(kSelfTemplateId)});
    models.push_back(std::move(model));
  }
  ActionModel noop;
  noop.action_id = kNoopActionId;
  noop.is_noop = true;
  models.push_back(std::move(noop));
  return models;
}

double templatePrior(const ActionModel& model) {
  if (model.is_noop) {
    throw ValidationError("the no-op action has no templates");
  }
  return 1.0 / static_cast<double>(model.templates.size());
}

std::vector<std::vector<int>> completeLinkageClusters(
    const std::vector<Pose>& poses, const PoseDistanceParams& bandwidth,
    double cutoff) {
  const int n = static_cast<int>(poses.size());
  std::vector<std::vector<int>> clusters;
  if (n == 0) return clusters;

  // Pairwise distances in meters-equivalent units.
  std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double d = bandwidth.sigma_t * poseDistance(poses[i], poses[j], bandwidth);
      dist[i * n + j] = d;
      dist[j * n + i] = d;
    }
  }

  clusters.reserve(n);
  for (int i = 0; i < n; ++i) clusters.push_back({i});

  auto linkage = [&](const std::vector<int>& a, const std::vector<int>& b) {
    double worst = 0.0;
    for (int i : a) {
      for (int j : b) worst = std::max(worst, dist[i * n + j]);
    }
    return worst;
  };

  while (clusters.size() > 1) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i + 1 < clusters.size(); ++i) {
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        double d = linkage(clusters[i], clusters[j]);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    if (best >= cutoff) break;
    auto& into = clusters[bi];
    into.insert(into.end(), clusters[bj].begin(), clusters[bj].end());
    std::sort(into.begin(), into.end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
  }

  std::sort(clusters.begin(), clusters.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return clusters;
}

std::vector<GoalCandidate> sampleGoalCandidates(const ActionModel& model,
                                                const ActionTemplate& tmpl,
                                                const WorldState& state,
                                                const GoalSamplingParams& params,
                                                Rng& rng) {
  if (model.is_noop) {
    throw ValidationError("cannot sample goals for the no-op action");
  }
  if (params.sample_count < 1) {
    throw ValidationError("goal sample count must be at least 1");
  }
  bool owned = std::any_of(
      model.templates.begin(), model.templates.end(),
      [&](const ActionTemplate& t) { return t.template_id == tmpl.template_id; });
  if (!owned) {
    throw ValidationError("template '" + tmpl.template_id +
                          "' does not belong to action '" + model.action_id +
                          "'");
  }
  auto ref_it = state.find(tmpl.reference_object);
  auto obj_it = state.find(model.object_id);
  if (ref_it == state.end() || obj_it == state.end()) {
    throw ValidationError("state is missing an object required by action '" +
                          model.action_id + "'");
  }
  // For the self template the reference object is the manipulated object, so
  // ref_it already points at its current pose.
  const Pose& reference = ref_it->second;

  std::uniform_int_distribution<std::size_t> pick(0, tmpl.samples.size() - 1);
  std::vector<Pose> world_poses;
  world_poses.reserve(params.sample_count);
  for (int s = 0; s < params.sample_count; ++s) {
    Pose rel = tmpl.samples[pick(rng)];
    if (params.noise_on) rel = samplePerturbedPose(rel, params.bandwidth, rng);
    world_poses.push_back(compose(reference, rel));
  }

  auto clusters =
      completeLinkageClusters(world_poses, params.bandwidth, params.cluster_cutoff);

  std::vector<GoalCandidate> candidates;
  candidates.reserve(clusters.size());
  for (const auto& members : clusters) {
    std::vector<Pose> member_poses;
    member_poses.reserve(members.size());
    for (int idx : members) member_poses.push_back(world_poses[idx]);
    GoalCandidate cand;
    cand.state = state;
    cand.state[model.object_id] = meanPose(member_poses);
    cand.cluster_size = static_cast<int>(members.size());
    cand.probability = static_cast<double>(members.size()) /
                       static_cast<double>(params.sample_count);
    candidates.push_back(std::move(cand));
  }
  return candidates;
}

std::vector<GoalCandidate> sampleGoalCandidates(const ActionModel& model,
                                                const ActionTemplate& tmpl,
                                                const WorldState& state,
                                                const GoalSamplingParams& params,
                                                std::uint64_t seed) {
  Rng rng(seed);
  return sampleGoalCandidates(model, tmpl, state, params, rng);
}

}  // namespace improv
