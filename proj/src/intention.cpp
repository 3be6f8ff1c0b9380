#include "improv/intention.hpp"

#include <cmath>

#include "improv/errors.hpp"
#include "improv/random.hpp"

namespace improv {

double kernelNormalizer(const PoseDistanceParams& params) {
  params.validate();
  return std::pow(2.0 * kPi, 2.0) * params.sigma_t * params.sigma_t *
         params.sigma_t * params.sigma_r;
}

double kernelDensity(const RelationModel& model, const Pose& query) {
  if (model.samples.empty()) {
    throw ValidationError("relation model holds no samples");
  }
  const double inv_z = 1.0 / kernelNormalizer(model.bandwidth);
  double acc = 0.0;
  for (const Pose& sample : model.samples) {
    double d = poseDistance(sample, query, model.bandwidth);
    acc += std::exp(-0.5 * d * d);
  }
  return inv_z * acc / static_cast<double>(model.samples.size());
}

double estimateEntropy(const RelationModel& model, int sample_count,
                       std::uint64_t seed) {
  if (sample_count < 1) {
    throw ValidationError("entropy sample count must be at least 1");
  }
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, model.samples.size() - 1);
  double acc = 0.0;
  for (int i = 0; i < sample_count; ++i) {
    const Pose& mode = model.samples[pick(rng)];
    Pose draw = samplePerturbedPose(mode, model.bandwidth, rng);
    acc += std::log(kernelDensity(model, draw));
  }
  return -acc / static_cast<double>(sample_count);
}

WeightSet computeWeights(const std::map<PairKey, double>& entropies) {
  if (entropies.empty()) {
    throw ValidationError("cannot compute weights without relations");
  }
  double h_min = entropies.begin()->second;
  for (const auto& [pair, h] : entropies) h_min = std::min(h_min, h);

  WeightSet out;
  out.eps_h = 0.01 - std::min(0.0, h_min);
  double sum = 0.0;
  for (const auto& [pair, h] : entropies) {
    double w = 1.0 / (out.eps_h + h);
    out.weights[pair] = w;
    sum += w;
  }
  out.eta = 1.0 / sum;
  return out;
}

double intentionLikelihood(const IntentionModel& model,
                           const WorldState& state) {
  double acc = 0.0;
  for (const RelationModel& rel : model.relations) {
    auto k = state.find(rel.object);
    auto l = state.find(rel.reference);
    if (k == state.end() || l == state.end()) {
      throw ValidationError("state is missing object '" +
                            (k == state.end() ? rel.object : rel.reference) +
                            "' required by the intention model");
    }
    acc += rel.weight *
           kernelDensity(rel, relativePose(l->second, k->second));
  }
  return model.eta * acc;
}

IntentionModel buildIntentionModel(const TaskDemoSet& set,
                                   const PoseDistanceParams& bandwidth,
                                   int entropy_samples, std::uint64_t seed) {
  bandwidth.validate();
  IntentionModel model;
  model.bandwidth = bandwidth;

  std::map<PairKey, double> entropies;
  std::uint64_t pair_index = 0;
  for (auto& [pair, samples] : extractFinalRelations(set)) {
    RelationModel rel;
    rel.object = pair.first;
    rel.reference = pair.second;
    rel.samples = samples;
    rel.bandwidth = bandwidth;
    rel.entropy = estimateEntropy(rel, entropy_samples, seed + pair_index);
    entropies[pair] = rel.entropy;
    model.relations.push_back(std::move(rel));
    ++pair_index;
  }

  WeightSet weights = computeWeights(entropies);
  model.eta = weights.eta;
  model.eps_h = weights.eps_h;
  for (RelationModel& rel : model.relations) {
    rel.weight = weights.weights.at({rel.object, rel.reference});
  }
  return model;
}

}  // namespace improv
