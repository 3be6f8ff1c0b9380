#pragma once

#include <map>
#include <string>

#include "improv/geometry.hpp"

namespace improv {

using ObjectId = std::string;

/// World state s_t: the pose of every object, keyed by id.
using WorldState = std::map<ObjectId, Pose>;

/// True when both states hold the same ids with poses equal within tol.
bool statesEqual(const WorldState& a, const WorldState& b,
                 double tol = kPoseTolerance);

}  // namespace improv
