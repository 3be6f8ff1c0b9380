#include "improv/trials.hpp"

#include <atomic>
#include <chrono>
#include <thread>

#include "improv/errors.hpp"

namespace improv {

namespace {

constexpr int kMaxRejectionAttempts = 10000;

TrialResult runOneTrial(const LearnedModel& model, const SceneSpec& scene,
                        const WorldState& start, int index,
                        PlannerConfig config) {
  TrialResult result;
  result.trial = index;
  config.seed = config.seed + static_cast<std::uint64_t>(index);
  auto t0 = std::chrono::steady_clock::now();
  try {
    Plan plan = solveTask(model.intention, model.actions, scene, start, config);
    result.value = plan.value;
    result.psi_final = intentionLikelihood(model.intention, plan.final_state);
    result.steps = static_cast<int>(plan.steps.size());
    result.outcome = *result.psi_final >= 0.5 * model.psi_demo_mean
                         ? TrialOutcome::kFull
                     : result.steps > 0 ? TrialOutcome::kPartial
                                        : TrialOutcome::kFailure;
  } catch (const Error&) {
    result.outcome = TrialOutcome::kFailure;
  }
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

}  // namespace

const char* toString(TrialOutcome outcome) {
  switch (outcome) {
    case TrialOutcome::kFull:
      return "full";
    case TrialOutcome::kPartial:
      return "partial";
    case TrialOutcome::kFailure:
      return "failure";
  }
  return "failure";
}

WorldState sampleFeasibleStartState(const SceneSpec& scene,
                                    const std::vector<ObjectId>& object_ids,
                                    Rng& rng) {
  std::uniform_real_distribution<double> ux(scene.workspace.min.x(),
                                            scene.workspace.max.x());
  std::uniform_real_distribution<double> uy(scene.workspace.min.y(),
                                            scene.workspace.max.y());
  std::uniform_real_distribution<double> uz(scene.workspace.min.z(),
                                            scene.workspace.max.z());
  for (int attempt = 0; attempt < kMaxRejectionAttempts; ++attempt) {
    WorldState state;
    for (const ObjectId& id : object_ids) {
      state[id] = Pose(Vec3(ux(rng), uy(rng), uz(rng)),
                       sampleUniformRotation(rng));
    }
    if (stateFeasible(scene, state)) return state;
  }
  throw ValidationError(
      "workspace too constrained: rejection sampling exhausted");
}

RunReport runTrials(const LearnedModel& model, const SceneSpec& scene, int n,
                    std::uint64_t seed, const PlannerConfig& config,
                    int max_threads, const std::vector<WorldState>* starts) {
  if (n < 1) throw ValidationError("trial count must be at least 1");
  if (starts && static_cast<int>(starts->size()) < n) {
    throw ValidationError("fewer start states than trials");
  }

  PlannerConfig resolved = resolvePlannerConfig(config, model);
  resolved.seed = seed;

  // Start states are drawn up front from one sequential generator so the
  // trial set is independent of the thread count.
  std::vector<WorldState> start_states;
  start_states.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (starts) {
      start_states.push_back((*starts)[i]);
    } else {
      Rng rng(seed + static_cast<std::uint64_t>(i) * 7919u);
      start_states.push_back(
          sampleFeasibleStartState(scene, model.object_ids, rng));
    }
  }

  std::vector<TrialResult> results(n);
  int threads = max_threads > 0
                    ? max_threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, n));

  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= n) return;
      results[i] = runOneTrial(model, scene, start_states[i], i, resolved);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  RunReport report;
  report.trials = n;
  report.per_trial = std::move(results);
  for (const TrialResult& r : report.per_trial) {
    switch (r.outcome) {
      case TrialOutcome::kFull:
        report.full_successes += 1;
        break;
      case TrialOutcome::kPartial:
        report.partial_solutions += 1;
        break;
      case TrialOutcome::kFailure:
        report.failures += 1;
        break;
    }
  }
  return report;
}

}  // namespace improv
