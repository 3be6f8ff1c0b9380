#include "improv/random.hpp"

#include <cmath>

namespace improv {

Vec3 sampleUniformAxis(Rng& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  double z = unit(rng);
  double phi = angle(rng);
  double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return Vec3(r * std::cos(phi), r * std::sin(phi), z);
}

Quat sampleUniformRotation(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double u1 = u(rng), u2 = u(rng), u3 = u(rng);
  double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
  return canonicalQuat(Quat(b * std::cos(2.0 * kPi * u3),
                            a * std::sin(2.0 * kPi * u2),
                            a * std::cos(2.0 * kPi * u2),
                            b * std::sin(2.0 * kPi * u3)));
}

double sampleFoldedAngle(double sigma, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, sigma);
  double angle = std::abs(gauss(rng));
  angle = std::fmod(angle, 2.0 * kPi);
  if (angle > kPi) angle = 2.0 * kPi - angle;
  return angle;
}

Pose samplePerturbedPose(const Pose& mode, const PoseDistanceParams& params,
                         Rng& rng) {
  std::normal_distribution<double> gauss(0.0, params.sigma_t);
  Vec3 dt(gauss(rng), gauss(rng), gauss(rng));
  Vec3 axis = sampleUniformAxis(rng);
  double angle = sampleFoldedAngle(params.sigma_r, rng);
  Quat dq(Eigen::AngleAxisd(angle, axis));
  return Pose(mode.translation + dt, dq * mode.rotation);
}

}  // namespace improv
