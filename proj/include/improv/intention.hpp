#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "improv/demonstrations.hpp"
#include "improv/world.hpp"

namespace improv {

/// Kernel density model of one pairwise relation: the pose of `object`
/// relative to `reference` at the demonstrated goal states.
struct RelationModel {
  ObjectId object;     // o_k
  ObjectId reference;  // o_l
  std::vector<Pose> samples;
  PoseDistanceParams bandwidth;
  double entropy = 0.0;  // nats
  double weight = 0.0;   // 1 / (eps_h + entropy)
};

/// The task intention likelihood: entropy-weighted sum of relation densities
/// over all ordered object pairs.
struct IntentionModel {
  std::vector<RelationModel> relations;
  double eta = 0.0;    // 1 / sum of weights
  double eps_h = 0.0;  // entropy offset keeping all weights finite positive
  PoseDistanceParams bandwidth;
};

/// Normalizer of the product kernel: (2 pi)^(3/2) sigma_t^3 * sqrt(2 pi) sigma_r.
double kernelNormalizer(const PoseDistanceParams& params);

/// Mean kernel contribution of the query over the model's samples.
double kernelDensity(const RelationModel& model, const Pose& query);

/// Monte Carlo plug-in entropy estimate from `sample_count` draws out of the
/// model's mixture. Deterministic for a fixed seed.
double estimateEntropy(const RelationModel& model, int sample_count,
                       std::uint64_t seed);

struct WeightSet {
  std::map<PairKey, double> weights;
  double eta = 0.0;
  double eps_h = 0.0;
};

/// eps_h = 0.01 - min(0, H_min); w = 1 / (eps_h + H); eta = 1 / sum(w).
WeightSet computeWeights(const std::map<PairKey, double>& entropies);

/// Psi(state): eta * sum over relations of w * density at the current
/// relative pose. Throws ValidationError when the state lacks a modeled id.
double intentionLikelihood(const IntentionModel& model,
                           const WorldState& state);

/// Builds the complete intention model from demonstration final states.
IntentionModel buildIntentionModel(const TaskDemoSet& set,
                                   const PoseDistanceParams& bandwidth,
                                   int entropy_samples, std::uint64_t seed);

}  // namespace improv
