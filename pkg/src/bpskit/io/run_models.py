"""Run configuration, trajectory headers and manifests for the command line."""

from __future__ import annotations

import hashlib
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from bpskit.diagnostics import DriftGridConfig, DriftReport, RegimeAdvice
from bpskit.estimators import EstimateReport
from bpskit.sampler import HorizonConfig, RefreshPolicy
from bpskit.sampler.rng import U64_MAX
from bpskit.targets import TargetConfig
from bpskit.transform import TransformConfig

TRAJECTORY_FORMAT_VERSION = 1
THICK_TAIL_BETA = 1.0

# Error messages
ERROR_TRANSFORM_NEEDS_THICK_TAILS = (
    "A transform is only meaningful for thick-tailed targets "
    "(student_t, or gen_gaussian with beta < 1); set force to override"
)
ERROR_INITIAL_POSITION_LENGTH = "initial_position must have one entry per dimension"
ERROR_NO_ESTIMATORS = "At least one estimator expression is required"


def is_thick_tailed(target: TargetConfig) -> bool:
    """Whether the target's gradient vanishes at infinity."""
    if target.family == "student_t":
        return True
    beta = target.parameters.beta
    return target.family == "gen_gaussian" and beta is not None and beta < THICK_TAIL_BETA


class RunConfig(BaseModel):
    """Everything needed to reproduce a sampling run."""

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        json_schema_extra={
            "examples": [
                {
                    "target": {"family": "gaussian", "dimension": 2},
                    "policy": {"kind": "constant", "lambda_ref": 1.0},
                    "horizon": {"duration": 1000.0},
                    "seed": 42,
                    "chains": 4,
                    "estimators": ["x1^2", "x2^2"],
                }
            ]
        },
    )

    target: TargetConfig
    policy: RefreshPolicy
    transform: TransformConfig | None = Field(
        default=None, description="Sample in transformed coordinates y with x = h(y)"
    )
    horizon: HorizonConfig
    seed: int = Field(default=0, ge=0, le=U64_MAX, description="Master seed (u64)")
    chains: int = Field(default=1, ge=1, description="Number of independent chains")
    threads: int = Field(default=1, ge=1, description="Worker processes for chains")
    output_dir: Path = Field(default=Path("runs"), description="Directory for run artifacts")
    estimators: list[str] = Field(
        default_factory=lambda: ["1"],
        description="Test functions: 1, xI, xI^P, xI*xJ or r2 (1-based coordinates)",
    )
    initial_position: list[float] | None = Field(
        default=None, description="Start position in original coordinates (origin by default)"
    )
    force: bool = Field(default=False, description="Allow a transform on non-thick targets")

    @model_validator(mode="after")
    def validate_run(self) -> RunConfig:
        """Cross-field checks the field types cannot express."""
        if self.transform is not None and not self.force and not is_thick_tailed(self.target):
            raise ValueError(ERROR_TRANSFORM_NEEDS_THICK_TAILS)
        if (
            self.initial_position is not None
            and len(self.initial_position) != self.target.dimension
        ):
            raise ValueError(ERROR_INITIAL_POSITION_LENGTH)
        if not self.estimators:
            raise ValueError(ERROR_NO_ESTIMATORS)
        return self

    def config_hash(self) -> str:
        """sha256 of the settings that determine the sampled trajectories."""
        payload = self.model_dump_json(exclude={"output_dir", "threads", "estimators", "force"})
        return hashlib.sha256(payload.encode()).hexdigest()


class TrajectoryHeader(BaseModel):
    """First line of a trajectory file."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    format_version: int = TRAJECTORY_FORMAT_VERSION
    target: TargetConfig
    policy: RefreshPolicy
    transform: TransformConfig | None = None
    coordinates: Literal["x", "y"] = Field(
        default="x", description="'y' when positions are in transformed coordinates"
    )
    seed: int | None = None
    chain: int = 0
    derived_seed: int | None = None
    d: int = Field(..., ge=2, description="Dimension")

    def run_signature(self) -> tuple[str, ...]:
        """Fields that must agree between chains of the same run."""
        return (
            self.target.model_dump_json(),
            self.policy.model_dump_json(),
            self.transform.model_dump_json() if self.transform else "",
            self.coordinates,
            str(self.seed),
            str(self.d),
        )


class ChainRecord(BaseModel):
    """Outcome of one chain in a sampling run."""

    chain: int
    derived_seed: int
    path: str
    events: int
    duration: float


class RunManifest(BaseModel):
    """Provenance for a sampling run."""

    config_hash: str
    seed: int
    config: RunConfig
    chains: list[ChainRecord]


class FunctionEstimate(BaseModel):
    """Pooled estimates of one test function."""

    function: str
    path: EstimateReport
    jump_chain: float


class EstimateRunReport(BaseModel):
    """Estimates for every requested test function over a set of chains."""

    chains: int
    duration: float
    estimates: list[FunctionEstimate]


class DiagnoseConfig(BaseModel):
    """Target, policy and grid for the diagnose command."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    target: TargetConfig
    policy: RefreshPolicy
    transform: TransformConfig | None = None
    grid: DriftGridConfig


class DiagnoseResult(BaseModel):
    """Drift evidence plus tail-regime advice."""

    drift: DriftReport
    regime: RegimeAdvice


class TransformCheckConfig(BaseModel):
    """Inputs of the transform-check command."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    target: TargetConfig
    transform: TransformConfig
    points: int = Field(default=100, ge=1, description="Random points per check")
    seed: int = Field(default=0, ge=0, le=U64_MAX)
