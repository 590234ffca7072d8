"""Python bindings for the action-advising experiment harness."""

from ._core import (
    Environment,
    RndModule,
    ShortestPathTeacher,
    StudentAgent,
    canonical_layout,
    compute_auc,
    compute_final_score,
    make_env,
    pretrain_teacher,
    run_session,
    shortest_path_distance,
)

__all__ = [
    "Environment",
    "RndModule",
    "ShortestPathTeacher",
    "StudentAgent",
    "canonical_layout",
    "compute_auc",
    "compute_final_score",
    "make_env",
    "pretrain_teacher",
    "run_session",
    "shortest_path_distance",
]
