#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "improv/errors.hpp"
#include "improv/intention.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace improv;
namespace tu = improv::testutil;

namespace {

RelationModel singleModeModel(const Pose& mode,
                              PoseDistanceParams bandwidth = {}) {
  RelationModel model;
  model.object = "k";
  model.reference = "l";
  model.samples = {mode};
  model.bandwidth = bandwidth;
  return model;
}

}  // namespace

TEST_CASE("kernelDensity at a sample and in the far tail") {
  PoseDistanceParams bw;
  double z = kernelNormalizer(bw);
  Rng rng(1);
  Pose mode = tu::randomPose(rng);
  RelationModel model = singleModeModel(mode, bw);

  CHECK(kernelDensity(model, mode) == doctest::Approx(1.0 / z).epsilon(1e-12));

  Pose far(mode.translation + Vec3(10.0 * bw.sigma_t, 0, 0), mode.rotation);
  CHECK(kernelDensity(model, far) < 1e-20 / z);
}

TEST_CASE("kernelDensity sums kernels over the sample set") {
  PoseDistanceParams bw;
  double z = kernelNormalizer(bw);
  Pose mode = Pose::identity();
  RelationModel model = singleModeModel(mode, bw);
  model.samples.push_back(
      Pose::fromTranslation(2.0 * bw.sigma_t, 0.0, 0.0));  // 2 sigma away
  double expected = (1.0 + std::exp(-2.0)) / 2.0 / z;
  CHECK(kernelDensity(model, mode) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("kernelDensity is invariant to sample order and frame offsets") {
  Rng rng(2);
  PoseDistanceParams bw;
  for (int trial = 0; trial < 50; ++trial) {
    RelationModel model;
    model.object = "k";
    model.reference = "l";
    model.bandwidth = bw;
    for (int i = 0; i < 4; ++i) model.samples.push_back(tu::randomPose(rng));
    Pose query = tu::randomPose(rng);
    double base = kernelDensity(model, query);

    RelationModel reordered = model;
    std::rotate(reordered.samples.begin(), reordered.samples.begin() + 2,
                reordered.samples.end());
    CHECK(kernelDensity(reordered, query) == doctest::Approx(base));

    // A common offset in the reference frame leaves the density unchanged.
    Pose offset = tu::randomPose(rng);
    RelationModel shifted = model;
    for (Pose& s : shifted.samples) s = compose(offset, s);
    CHECK(kernelDensity(shifted, compose(offset, query)) ==
          doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("kernelDensity peaks at the mode of a single-mode model") {
  PoseDistanceParams bw;
  Pose mode = Pose::fromAxisAngle(Vec3::UnitZ(), 0.4, Vec3(0.1, -0.2, 0.3));
  RelationModel model = singleModeModel(mode, bw);
  double at_mode = kernelDensity(model, mode);
  for (int i = -3; i <= 3; ++i) {
    for (int j = -3; j <= 3; ++j) {
      Pose probe(mode.translation + Vec3(i * 0.01, j * 0.01, 0.0),
                 mode.rotation);
      CHECK(kernelDensity(model, probe) <= at_mode + 1e-15);
    }
  }
}

TEST_CASE("estimateEntropy is deterministic per seed") {
  Rng rng(3);
  RelationModel model = singleModeModel(tu::randomPose(rng));
  model.samples.push_back(tu::randomPose(rng));
  CHECK(estimateEntropy(model, 500, 42) ==
        estimateEntropy(model, 500, 42));
  CHECK(estimateEntropy(model, 500, 42) != estimateEntropy(model, 500, 43));
}

TEST_CASE("estimateEntropy matches the closed-form single-mode entropy") {
  PoseDistanceParams bw;
  RelationModel model = singleModeModel(Pose::identity(), bw);
  const int m = 10000;
  double h = estimateEntropy(model, m, 7);
  double expected = testoracle::singleModeEntropy(bw);
  // The estimator's variance is Var(chi2_3/2 + chi2_1/2) = 2.
  double standard_error = std::sqrt(2.0 / m);
  CHECK(std::abs(h - expected) <= 3.0 * standard_error);
}

TEST_CASE("doubling sigma_t raises the entropy by about 3 log 2") {
  PoseDistanceParams narrow{0.02, 0.1};
  PoseDistanceParams wide{0.04, 0.1};
  const int m = 20000;
  double h_narrow =
      estimateEntropy(singleModeModel(Pose::identity(), narrow), m, 11);
  double h_wide =
      estimateEntropy(singleModeModel(Pose::identity(), wide), m, 12);
  CHECK(std::abs((h_wide - h_narrow) - 3.0 * std::log(2.0)) < 0.05);
}

TEST_CASE("estimateEntropy spread shrinks with the sample count") {
  Rng rng(4);
  RelationModel model = singleModeModel(tu::randomPose(rng));
  auto spread = [&](int m) {
    double lo = 1e300, hi = -1e300;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      double h = estimateEntropy(model, m, seed);
      lo = std::min(lo, h);
      hi = std::max(hi, h);
    }
    return hi - lo;
  };
  CHECK(spread(10000) < spread(100));
}

TEST_CASE("computeWeights formula cases") {
  SUBCASE("single pair at zero entropy") {
    WeightSet ws = computeWeights({{{"k", "l"}, 0.0}});
    CHECK(ws.eps_h == doctest::Approx(0.01));
    CHECK(ws.weights.at({"k", "l"}) == doctest::Approx(100.0));
    CHECK(ws.eta == doctest::Approx(0.01));
  }
  SUBCASE("negative minimum entropy shifts eps_h") {
    WeightSet ws = computeWeights({{{"a", "b"}, -1.0}, {{"b", "a"}, 2.0}});
    CHECK(ws.eps_h == doctest::Approx(1.01));
    CHECK(ws.weights.at({"a", "b"}) == doctest::Approx(100.0));
    CHECK(ws.weights.at({"b", "a"}) ==
          doctest::Approx(1.0 / 3.01).epsilon(1e-9));
  }
  SUBCASE("equal entropies give equal normalized weights") {
    WeightSet ws = computeWeights(
        {{{"a", "b"}, 0.7}, {{"b", "a"}, 0.7}, {{"a", "c"}, 0.7}});
    double first = ws.weights.begin()->second;
    for (const auto& [pair, w] : ws.weights) {
      CHECK(w == doctest::Approx(first));
      CHECK(ws.eta * w == doctest::Approx(1.0 / 3.0));
    }
  }
}

TEST_CASE("weights are strictly monotone in entropy") {
  Rng rng(5);
  std::uniform_real_distribution<double> u(-2.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    double ha = u(rng), hb = u(rng);
    if (ha == hb) continue;
    WeightSet ws = computeWeights({{{"a", "x"}, ha}, {{"b", "x"}, hb}});
    if (ha < hb) {
      CHECK(ws.weights.at({"a", "x"}) > ws.weights.at({"b", "x"}));
    } else {
      CHECK(ws.weights.at({"b", "x"}) > ws.weights.at({"a", "x"}));
    }
  }
}

TEST_CASE("intentionLikelihood is a convex combination of densities") {
  PoseDistanceParams bw;
  IntentionModel model;
  model.bandwidth = bw;
  RelationModel ab = singleModeModel(Pose::fromTranslation(0.5, 0, 0), bw);
  ab.object = "a";
  ab.reference = "b";
  RelationModel ba = singleModeModel(Pose::fromTranslation(-0.5, 0, 0), bw);
  ba.object = "b";
  ba.reference = "a";
  ab.weight = ba.weight = 10.0;
  model.relations = {ab, ba};
  model.eta = 1.0 / 20.0;
  model.eps_h = 0.01;

  WorldState state{{"a", Pose::fromTranslation(0.5, 0, 0)},
                   {"b", Pose::identity()}};
  double d1 = kernelDensity(ab, relativePose(state.at("b"), state.at("a")));
  double d2 = kernelDensity(ba, relativePose(state.at("a"), state.at("b")));
  CHECK(intentionLikelihood(model, state) ==
        doctest::Approx((d1 + d2) / 2.0).epsilon(1e-12));

  // Psi never exceeds the largest per-pair density.
  CHECK(intentionLikelihood(model, state) <= std::max(d1, d2) + 1e-15);

  WorldState missing{{"a", Pose::identity()}};
  CHECK_THROWS_AS(intentionLikelihood(model, missing), ValidationError);
}

TEST_CASE("a single-pair model reduces to its kernel density") {
  PoseDistanceParams bw;
  IntentionModel model;
  model.bandwidth = bw;
  RelationModel rel = singleModeModel(Pose::fromTranslation(0.3, 0, 0), bw);
  rel.weight = 25.0;
  model.relations = {rel};
  model.eta = 1.0 / 25.0;

  WorldState state{{"k", Pose::fromTranslation(0.31, 0, 0)},
                   {"l", Pose::identity()}};
  double density =
      kernelDensity(rel, relativePose(state.at("l"), state.at("k")));
  CHECK(intentionLikelihood(model, state) == doctest::Approx(density));
}

TEST_CASE("displacing an object lowers the intention likelihood") {
  auto task = tu::makeLidAndBoxTask();
  LearnedModel model = tu::learnTask(task.set);
  const WorldState& goal = task.set.demos[0].final_state;
  double at_goal = intentionLikelihood(model.intention, goal);

  WorldState perturbed = goal;
  perturbed["lid"].translation +=
      Vec3(10.0 * model.intention.bandwidth.sigma_t, 0, 0);
  CHECK(at_goal > intentionLikelihood(model.intention, perturbed));
}

TEST_CASE("buildIntentionModel normalizes weights to one") {
  auto task = tu::makeLidAndBoxTask();
  IntentionModel model =
      buildIntentionModel(task.set, PoseDistanceParams{}, 400, 3);
  double sum = 0.0;
  for (const RelationModel& rel : model.relations) {
    CHECK(rel.weight > 0.0);
    CHECK(rel.samples.size() == 5);
    sum += rel.weight;
  }
  CHECK(model.eta * sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(model.eps_h > 0.0);
}
