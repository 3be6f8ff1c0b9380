"""Demonstration-learned task intention models and an anytime planner.

The heavy lifting lives in the ``_core`` extension module; this package
re-exports its public surface.
"""

from improv._core import (  # noqa: F401
    InfeasibleStartError,
    LearnedModel,
    NoFeasiblePlanError,
    ParseError,
    Plan,
    PlanStep,
    Pose,
    PoseDistanceParams,
    SceneSpec,
    Trajectory,
    ValidationError,
    boxes_overlap,
    compose,
    intention_likelihood,
    inverse,
    learn,
    load_model,
    load_plan,
    load_scene,
    load_start_state,
    mean_pose,
    pose_distance,
    relative_pose,
    render_plan_svg,
    render_state_svg,
    run_trials,
    solve_task,
    state_feasible,
)

__all__ = [
    "InfeasibleStartError",
    "LearnedModel",
    "NoFeasiblePlanError",
    "ParseError",
    "Plan",
    "PlanStep",
    "Pose",
    "PoseDistanceParams",
    "SceneSpec",
    "Trajectory",
    "ValidationError",
    "boxes_overlap",
    "compose",
    "intention_likelihood",
    "inverse",
    "learn",
    "load_model",
    "load_plan",
    "load_scene",
    "load_start_state",
    "mean_pose",
    "pose_distance",
    "relative_pose",
    "render_plan_svg",
    "render_state_svg",
    "run_trials",
    "solve_task",
    "state_feasible",
]

__version__ = "0.1.0"
