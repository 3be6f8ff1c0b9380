#pragma once

#include <string>

#include "improv/feasibility.hpp"
#include "improv/planner.hpp"

namespace improv {

/// Top-down orthographic SVG of one state: workspace rectangle and labeled
/// object footprints.
std::string renderStateSvg(const SceneSpec& scene, const WorldState& state);

/// One frame per plan step (plus the start state), each with the step's
/// trajectory polyline.
std::string renderPlanSvg(const SceneSpec& scene, const Plan& plan);

}  // namespace improv
