#include <doctest.h>

#include <cmath>

#include "improv/errors.hpp"
#include "improv/geometry.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace improv;
namespace oracle = improv::testoracle;

namespace {
constexpr double kDeg = kPi / 180.0;
}

TEST_CASE("compose: identity, translations, rotation symmetry") {
  Rng rng(1);
  Pose p = testutil::randomPose(rng);
  CHECK(approxEqual(compose(Pose::identity(), p), p));
  CHECK(approxEqual(compose(p, Pose::identity()), p));

  CHECK(approxEqual(compose(Pose::fromTranslation(1, 0, 0),
                            Pose::fromTranslation(0, 2, 0)),
                    Pose::fromTranslation(1, 2, 0)));
  CHECK(approxEqual(compose(Pose::rotZ(90 * kDeg), Pose::rotZ(90 * kDeg)),
                    Pose::rotZ(180 * kDeg)));
}

TEST_CASE("compose is associative") {
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    Pose a = testutil::randomPose(rng);
    Pose b = testutil::randomPose(rng);
    Pose c = testutil::randomPose(rng);
    CHECK(approxEqual(compose(compose(a, b), c), compose(a, compose(b, c)),
                      1e-9));
  }
}

TEST_CASE("inverse: identity, translation, rotation") {
  CHECK(approxEqual(inverse(Pose::identity()), Pose::identity()));
  CHECK(approxEqual(inverse(Pose::fromTranslation(1, 2, 3)),
                    Pose::fromTranslation(-1, -2, -3)));
  CHECK(approxEqual(inverse(Pose::rotZ(90 * kDeg)), Pose::rotZ(-90 * kDeg)));
}

TEST_CASE("compose with inverse returns identity for random poses") {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    Pose p = testutil::randomPose(rng);
    CHECK(approxEqual(compose(p, inverse(p)), Pose::identity(), 1e-9));
    CHECK(approxEqual(compose(inverse(p), p), Pose::identity(), 1e-9));
  }
}

TEST_CASE("relativePose trivial cases") {
  Rng rng(4);
  Pose p = testutil::randomPose(rng);
  CHECK(approxEqual(relativePose(p, p), Pose::identity()));
  CHECK(approxEqual(relativePose(Pose::identity(), p), p));
}

TEST_CASE("relativePose re-composition and matrix oracle") {
  Pose ref = Pose::fromAxisAngle(Vec3::UnitZ(), 90 * kDeg, Vec3(1, 0, 0));
  Pose target = Pose::fromTranslation(1, 1, 0);
  Pose rel = relativePose(ref, target);
  CHECK(approxEqual(compose(ref, rel), target, 1e-9));
  CHECK(approxEqual(rel, oracle::relativeByMatrix(ref, target), 1e-9));

  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    Pose a = testutil::randomPose(rng);
    Pose b = testutil::randomPose(rng);
    Pose r = relativePose(a, b);
    CHECK(approxEqual(compose(a, r), b, 1e-9));
    CHECK(approxEqual(r, oracle::relativeByMatrix(a, b), 1e-9));
  }
}

TEST_CASE("compose matches the homogeneous-matrix route") {
  Rng rng(6);
  for (int i = 0; i < 500; ++i) {
    Pose a = testutil::randomPose(rng);
    Pose b = testutil::randomPose(rng);
    CHECK(approxEqual(compose(a, b), oracle::composeByMatrix(a, b), 1e-9));
  }
}

TEST_CASE("poseDistance formula values") {
  PoseDistanceParams params{0.05, 0.1};
  Rng rng(7);
  Pose p = testutil::randomPose(rng);
  CHECK(poseDistance(p, p, params) == doctest::Approx(0.0));

  CHECK(poseDistance(Pose::identity(), Pose::fromTranslation(0.1, 0, 0),
                     params) == doctest::Approx(2.0));

  // 0.03 m offset and a 30 degree turn at sigma_t = 0.03, sigma_r = pi/6
  // lands exactly one bandwidth away on both axes.
  PoseDistanceParams mixed{0.03, kPi / 6.0};
  Pose b = Pose::fromAxisAngle(Vec3::UnitY(), 30 * kDeg, Vec3(0.03, 0, 0));
  CHECK(poseDistance(Pose::identity(), b, mixed) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("poseDistance is symmetric, nonnegative, zero only at equality") {
  PoseDistanceParams params;
  Rng rng(8);
  for (int i = 0; i < 500; ++i) {
    Pose a = testutil::randomPose(rng);
    Pose b = testutil::randomPose(rng);
    double dab = poseDistance(a, b, params);
    double dba = poseDistance(b, a, params);
    CHECK(dab == doctest::Approx(dba).epsilon(1e-12));
    CHECK(dab >= 0.0);
    if (dab < 1e-12) CHECK(approxEqual(a, b, 1e-9));
  }
  // Quaternion sign has no effect.
  Pose q = testutil::randomPose(rng);
  Pose q_flip(q.translation, Quat(-q.rotation.w(), -q.rotation.x(),
                                  -q.rotation.y(), -q.rotation.z()));
  CHECK(poseDistance(q, q_flip, params) == doctest::Approx(0.0));
}

TEST_CASE("meanPose basics") {
  Rng rng(9);
  Pose p = testutil::randomPose(rng);
  CHECK(approxEqual(meanPose(std::vector<Pose>{p}), p));

  CHECK(approxEqual(meanPose(std::vector<Pose>{Pose::fromTranslation(0, 0, 0),
                                               Pose::fromTranslation(2, 0, 0)}),
                    Pose::fromTranslation(1, 0, 0)));

  // Antipodal quaternions are the same rotation; the mean must sign-align.
  Pose q = testutil::randomPose(rng);
  Pose q_neg(q.translation, Quat(-q.rotation.w(), -q.rotation.x(),
                                 -q.rotation.y(), -q.rotation.z()));
  CHECK(approxEqual(meanPose(std::vector<Pose>{q, q_neg}), q, 1e-9));
}

TEST_CASE("meanPose invariant to order and quaternion sign flips") {
  Rng rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    Pose base = testutil::randomPose(rng);
    std::vector<Pose> poses;
    for (int i = 0; i < 5; ++i) {
      Pose perturbed = compose(
          base, Pose::fromAxisAngle(Vec3::UnitX(), 0.02 * i,
                                    Vec3(0.01 * i, -0.01 * i, 0.005 * i)));
      poses.push_back(perturbed);
    }
    Pose mean = meanPose(poses);

    std::vector<Pose> shuffled{poses[3], poses[0], poses[4], poses[2],
                               poses[1]};
    CHECK(approxEqual(meanPose(shuffled), mean, 1e-9));

    std::vector<Pose> flipped = poses;
    for (std::size_t i = 0; i < flipped.size(); i += 2) {
      const Quat& r = flipped[i].rotation;
      flipped[i].rotation = Quat(-r.w(), -r.x(), -r.y(), -r.z());
    }
    CHECK(approxEqual(meanPose(flipped), mean, 1e-9));
  }
}

TEST_CASE("meanPose rejects an empty cluster") {
  CHECK_THROWS_AS(meanPose(std::vector<Pose>{}), ValidationError);
}

TEST_CASE("operations keep quaternions canonical and unit norm") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    Pose a = testutil::randomPose(rng);
    Pose b = testutil::randomPose(rng);
    for (const Pose& p : {compose(a, b), inverse(a), relativePose(a, b)}) {
      CHECK(std::abs(p.rotation.norm() - 1.0) <= 1e-9);
      CHECK(p.rotation.w() >= 0.0);
    }
  }
}

TEST_CASE("bandwidth parameters must be positive") {
  PoseDistanceParams zero_t{0.0, 0.1};
  PoseDistanceParams negative_r{0.1, -1.0};
  CHECK_THROWS_AS(zero_t.validate(), ValidationError);
  CHECK_THROWS_AS(negative_r.validate(), ValidationError);
}
