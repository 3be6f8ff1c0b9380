#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "improv/model.hpp"
#include "improv/random.hpp"

namespace improv {

enum class TrialOutcome { kFull, kPartial, kFailure };

const char* toString(TrialOutcome outcome);

struct TrialResult {
  int trial = 0;
  TrialOutcome outcome = TrialOutcome::kFailure;
  std::optional<double> value;      // plan value; empty when the solve failed
  std::optional<double> psi_final;  // Psi of the plan's final state
  int steps = 0;
  double wall_time_s = 0.0;
};

/// Outcome counts of a randomized trial run; full + partial + failures
/// always equals trials.
struct RunReport {
  int trials = 0;
  int full_successes = 0;
  int partial_solutions = 0;
  int failures = 0;
  std::vector<TrialResult> per_trial;
};

/// Uniform rejection sampling of a feasible state: translations uniform in
/// the workspace, rotations uniform on SO(3). Throws after 10^4 rejected
/// attempts.
WorldState sampleFeasibleStartState(const SceneSpec& scene,
                                    const std::vector<ObjectId>& object_ids,
                                    Rng& rng);

/// Runs n independent planning trials from random feasible starts (seed +
/// trial index each), classifying full successes at final Psi >= half the
/// mean demonstrated goal Psi. `starts` overrides the sampled start states
/// (for tests). max_threads <= 0 picks the hardware default.
RunReport runTrials(const LearnedModel& model, const SceneSpec& scene, int n,
                    std::uint64_t seed, const PlannerConfig& config,
                    int max_threads = 0,
                    const std::vector<WorldState>* starts = nullptr);

}  // namespace improv
