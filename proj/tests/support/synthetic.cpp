#include "synthetic.hpp"

#include <random>

#include "improv/errors.hpp"
#include "improv/random.hpp"

namespace improv::testutil {

namespace {

Pose lerpPose(const Pose& a, const Pose& b, double v) {
  return Pose(a.translation + v * (b.translation - a.translation),
              a.rotation.slerp(v, b.rotation));
}

Pose tableYawPose(double x, double y, double z, double yaw) {
  return Pose::fromAxisAngle(Vec3::UnitZ(), yaw, Vec3(x, y, z));
}

}  // namespace

RawDemo makeTrace(const std::vector<std::pair<ObjectId, Pose>>& starts,
                  const std::vector<MoveSpec>& moves, int move_frames,
                  int pad_frames, bool with_hand) {
  RawDemo demo;
  WorldState current;
  for (const auto& [id, pose] : starts) {
    demo.object_ids.push_back(id);
    current[id] = pose;
  }
  const Pose parked = Pose::fromTranslation(5.0, 5.0, 1.0);

  double t = 0.0;
  auto push = [&](const std::optional<Pose>& hand) {
    Frame frame;
    frame.t = t;
    frame.poses = current;
    if (with_hand) frame.hand = hand.value_or(parked);
    demo.frames.push_back(std::move(frame));
    t += 0.1;
  };

  for (int i = 0; i < pad_frames; ++i) push(std::nullopt);
  for (const MoveSpec& move : moves) {
    Pose from = current.at(move.object);
    for (int f = 1; f <= move_frames; ++f) {
      double v = static_cast<double>(f) / move_frames;
      current[move.object] = lerpPose(from, move.goal, v);
      push(current.at(move.object));
    }
    for (int i = 0; i < pad_frames; ++i) push(std::nullopt);
  }
  return demo;
}

LidAndBoxTask makeLidAndBoxTask(std::uint64_t seed) {
  LidAndBoxTask task;
  task.shapes = {{"box", Vec3(0.10, 0.10, 0.075)},
                 {"lid", Vec3(0.10, 0.10, 0.010)}};
  task.scene.objects = task.shapes;
  task.scene.workspace = {Vec3(-1.2, -1.2, 0.0), Vec3(1.2, 1.2, 0.6)};
  task.scene.support_height = 0.0;
  task.scene.reach_radius = 0.9;
  task.scene.lift_height = 0.15;
  task.lid_rel_box = Pose::fromTranslation(0.28, 0.0, -0.065);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> jitter_t(0.0, 0.003);
  std::normal_distribution<double> jitter_yaw(0.0, 0.025);

  // Spread of start poses and final box/lid placements across the demos.
  const double box_final_x[5] = {0.10, -0.15, 0.05, 0.30, -0.30};
  const double box_final_y[5] = {0.00, 0.20, -0.25, 0.15, -0.10};
  const double box_final_yaw[5] = {0.10, -0.40, 0.75, -0.20, 0.50};
  const double box_start_x[5] = {-0.55, 0.45, -0.40, -0.50, 0.50};
  const double box_start_y[5] = {-0.45, 0.50, 0.35, 0.05, 0.35};
  const double lid_start_x[5] = {0.55, -0.50, 0.45, 0.45, -0.55};
  const double lid_start_y[5] = {0.50, -0.40, 0.50, -0.50, -0.50};

  std::vector<Demo> demos;
  for (int n = 0; n < 5; ++n) {
    Pose jitter(Vec3(jitter_t(rng), jitter_t(rng), jitter_t(rng)),
                Quat(Eigen::AngleAxisd(jitter_yaw(rng), Vec3::UnitZ())));
    Pose rel = compose(task.lid_rel_box, jitter);

    Pose box_start =
        tableYawPose(box_start_x[n], box_start_y[n], 0.075, 0.3 * n - 0.6);
    Pose lid_start =
        tableYawPose(lid_start_x[n], lid_start_y[n], 0.010, -0.2 * n + 0.4);

    std::vector<MoveSpec> moves;
    if (n < 3) {
      Pose box_final = tableYawPose(box_final_x[n], box_final_y[n], 0.075,
                                    box_final_yaw[n]);
      moves = {{"box", box_final}, {"lid", compose(box_final, rel)}};
    } else {
      Pose lid_final = tableYawPose(box_final_x[n], box_final_y[n], 0.010,
                                    box_final_yaw[n]);
      moves = {{"lid", lid_final}, {"box", compose(lid_final, inverse(rel))}};
    }
    RawDemo raw =
        makeTrace({{"box", box_start}, {"lid", lid_start}}, moves, 25, 6);
    Demo demo;
    demo.segments = segmentDemo(raw);
    demo.final_state = raw.frames.back().poses;
    task.raw_demos.push_back(std::move(raw));
    demos.push_back(std::move(demo));
  }
  task.set = buildTaskDemoSet(demos);
  return task;
}

ArrangeTask makeArrangeTask(std::uint64_t seed) {
  ArrangeTask task;
  task.shapes = {{"a", Vec3(0.05, 0.05, 0.05)},
                 {"b", Vec3(0.05, 0.05, 0.05)},
                 {"c", Vec3(0.08, 0.08, 0.10)}};
  task.scene.objects = task.shapes;
  task.scene.workspace = {Vec3(-1.2, -1.2, 0.0), Vec3(1.2, 1.2, 0.6)};
  task.scene.support_height = 0.0;
  task.scene.reach_radius = 0.9;
  task.scene.lift_height = 0.15;
  task.a_rel_c = Pose::fromTranslation(0.30, 0.0, -0.05);
  task.b_rel_c = Pose::fromTranslation(0.0, 0.30, -0.05);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> jitter_t(0.0, 0.003);

  const double c_x[5] = {0.0, 0.15, -0.20, 0.10, -0.10};
  const double c_y[5] = {0.0, -0.15, 0.10, 0.20, -0.20};
  const double c_yaw[5] = {0.0, 0.35, -0.50, 0.15, 0.60};

  std::vector<Demo> demos;
  for (int n = 0; n < 5; ++n) {
    Pose anchor = tableYawPose(c_x[n], c_y[n], 0.10, c_yaw[n]);
    auto jitter = [&]() {
      return Pose::fromTranslation(jitter_t(rng), jitter_t(rng),
                                   jitter_t(rng));
    };
    Pose a_start = tableYawPose(-0.6, -0.5 + 0.1 * n, 0.05, 0.2 * n);
    Pose b_start = tableYawPose(0.6, 0.5 - 0.1 * n, 0.05, -0.2 * n);
    std::vector<MoveSpec> moves = {
        {"a", compose(anchor, compose(task.a_rel_c, jitter()))},
        {"b", compose(anchor, compose(task.b_rel_c, jitter()))}};
    RawDemo raw = makeTrace(
        {{"a", a_start}, {"b", b_start}, {"c", anchor}}, moves, 25, 6);
    Demo demo;
    demo.segments = segmentDemo(raw);
    demo.final_state = raw.frames.back().poses;
    demos.push_back(std::move(demo));
  }
  task.set = buildTaskDemoSet(demos);
  return task;
}

LearnedModel learnTask(const TaskDemoSet& set, std::uint64_t seed,
                       int entropy_samples) {
  return learnModel(set, PoseDistanceParams{}, entropy_samples, seed);
}

Pose randomPose(Rng& rng, double box) {
  std::uniform_real_distribution<double> u(-box, box);
  return Pose(Vec3(u(rng), u(rng), u(rng)), sampleUniformRotation(rng));
}

}  // namespace improv::testutil
