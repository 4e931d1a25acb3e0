"""Run configuration, trajectory files and the command-line interface."""

from .commands import (
    build_sampling_target,
    cmd_diagnose,
    cmd_estimate,
    cmd_sample,
    cmd_transform_check,
)
from .run_models import (
    ChainRecord,
    DiagnoseConfig,
    DiagnoseResult,
    EstimateRunReport,
    FunctionEstimate,
    RunConfig,
    RunManifest,
    TrajectoryHeader,
    TransformCheckConfig,
    is_thick_tailed,
)
from .trajectory_store import TrajectoryStore, chain_path

__all__ = [
    "ChainRecord",
    "DiagnoseConfig",
    "DiagnoseResult",
    "EstimateRunReport",
    "FunctionEstimate",
    "RunConfig",
    "RunManifest",
    "TrajectoryHeader",
    "TrajectoryStore",
    "TransformCheckConfig",
    "build_sampling_target",
    "chain_path",
    "cmd_diagnose",
    "cmd_estimate",
    "cmd_sample",
    "cmd_transform_check",
    "is_thick_tailed",
]
