#pragma once

#include <random>

#include "improv/geometry.hpp"

namespace improv {

using Rng = std::mt19937_64;

/// Unit vector uniformly distributed on the sphere.
Vec3 sampleUniformAxis(Rng& rng);

/// Rotation uniformly distributed on SO(3) (Shoemake's method).
Quat sampleUniformRotation(Rng& rng);

/// |N(0, sigma)| folded into [0, pi].
double sampleFoldedAngle(double sigma, Rng& rng);

/// Draws one pose from the kernel centered at `mode`: translation offset
/// N(0, sigma_t * I3), rotation offset about a uniform axis by a folded
/// Gaussian angle.
Pose samplePerturbedPose(const Pose& mode, const PoseDistanceParams& params,
                         Rng& rng);

}  // namespace improv
