#include "improv/render.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

namespace improv {

namespace {

constexpr double kScale = 250.0;  // pixels per meter
constexpr double kMargin = 24.0;

const char* kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759",
                          "#76b7b2", "#edc948", "#b07aa1", "#9c755f"};

struct Frame2D {
  double width = 0.0;
  double height = 0.0;
  const SceneSpec* scene = nullptr;

  double x(double wx) const {
    return kMargin + (wx - scene->workspace.min.x()) * kScale;
  }
  double y(double wy) const {
    return kMargin + (scene->workspace.max.y() - wy) * kScale;
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

void drawState(std::ostringstream& svg, const Frame2D& f,
               const WorldState& state, const std::string& title) {
  svg << "<rect x=\"" << num(kMargin) << "\" y=\"" << num(kMargin)
      << "\" width=\"" << num(f.width - 2 * kMargin) << "\" height=\""
      << num(f.height - 2 * kMargin)
      << "\" fill=\"#fcfcfc\" stroke=\"#333333\"/>\n";
  svg << "<text x=\"" << num(kMargin) << "\" y=\"" << num(kMargin - 8)
      << "\" font-size=\"13\" font-family=\"sans-serif\">" << title
      << "</text>\n";
  int color = 0;
  for (const auto& [id, pose] : state) {
    auto shape_it = f.scene->objects.find(id);
    if (shape_it == f.scene->objects.end()) continue;
    const Vec3& half = shape_it->second;
    svg << "<polygon points=\"";
    const double sx[4] = {-1, 1, 1, -1};
    const double sy[4] = {-1, -1, 1, 1};
    for (int c = 0; c < 4; ++c) {
      Vec3 p = pose.apply(Vec3(sx[c] * half.x(), sy[c] * half.y(), 0.0));
      svg << num(f.x(p.x())) << "," << num(f.y(p.y()));
      if (c < 3) svg << " ";
    }
    svg << "\" fill=\"" << kPalette[color % 8]
        << "\" fill-opacity=\"0.55\" stroke=\"#222222\"/>\n";
    svg << "<text x=\"" << num(f.x(pose.translation.x()))
        << "\" y=\"" << num(f.y(pose.translation.y()))
        << "\" font-size=\"11\" font-family=\"sans-serif\" "
           "text-anchor=\"middle\">"
        << id << "</text>\n";
    ++color;
  }
}

void drawTrajectory(std::ostringstream& svg, const Frame2D& f,
                    const Trajectory& traj) {
  svg << "<polyline points=\"";
  for (std::size_t i = 0; i < traj.waypoints.size(); ++i) {
    const Vec3& t = traj.waypoints[i].translation;
    svg << num(f.x(t.x())) << "," << num(f.y(t.y()));
    if (i + 1 < traj.waypoints.size()) svg << " ";
  }
  svg << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" "
         "stroke-dasharray=\"4 3\"/>\n";
}

std::string renderFrames(const SceneSpec& scene,
                         const std::vector<WorldState>& states,
                         const std::vector<const Trajectory*>& trajectories,
                         const std::vector<std::string>& titles) {
  Frame2D f;
  f.scene = &scene;
  f.width =
      (scene.workspace.max.x() - scene.workspace.min.x()) * kScale +
      2 * kMargin;
  f.height =
      (scene.workspace.max.y() - scene.workspace.min.y()) * kScale +
      2 * kMargin;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << num(f.width * states.size()) << "\" height=\"" << num(f.height)
      << "\">\n";
  for (std::size_t i = 0; i < states.size(); ++i) {
    svg << "<g transform=\"translate(" << num(i * f.width) << " 0)\">\n";
    drawState(svg, f, states[i], titles[i]);
    if (trajectories[i] != nullptr) drawTrajectory(svg, f, *trajectories[i]);
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

std::string renderStateSvg(const SceneSpec& scene, const WorldState& state) {
  return renderFrames(scene, {state}, {nullptr}, {"state"});
}

std::string renderPlanSvg(const SceneSpec& scene, const Plan& plan) {
  std::vector<WorldState> states{plan.start_state};
  std::vector<const Trajectory*> trajectories{nullptr};
  std::vector<std::string> titles{"start"};
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const PlanStep& step = plan.steps[i];
    states.push_back(step.goal_state);
    trajectories.push_back(step.trajectory ? &*step.trajectory : nullptr);
    titles.push_back("step " + std::to_string(i + 1) + ": move " +
                     step.object_id + " (" + step.template_id + ")");
  }
  return renderFrames(scene, states, trajectories, titles);
}

}  // namespace improv
