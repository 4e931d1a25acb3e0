"""Value types for the sampler: refresh policies, horizons, states, events and trajectories."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from enum import Enum
from typing import Annotated, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from bpskit.exceptions import TrajectoryError
from bpskit.numerics import FloatArray
from bpskit.targets import TargetConfig

DEFAULT_EPSILON = 0.5
UNIT_SPEED_TOLERANCE = 1e-12

# Error messages
ERROR_HORIZON_EXCLUSIVE = "Exactly one of 'duration' or 'event_count' must be set"
ERROR_VELOCITY_NOT_UNIT = "Velocity must have unit norm, got |v| = {norm!r}"
ERROR_STATE_SHAPE = "Position and velocity must be vectors of equal length"
ERROR_EMPTY_TRAJECTORY = "Trajectory contains no events"
ERROR_TIME_OUT_OF_RANGE = "Time {time!r} lies outside the trajectory span [{start!r}, {end!r}]"


class ConstantRefresh(BaseModel):
    """Refresh velocities at a constant rate lambda_ref."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["constant"] = "constant"
    lambda_ref: float = Field(..., gt=0, description="Refresh rate", examples=[1.0, 10.0])


class PositionDependentRefresh(BaseModel):
    """Refresh at lambda_ref + |grad U(x)| / max(1, |x|^epsilon) for thin-tailed targets."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["position_dependent"] = "position_dependent"
    lambda_ref: float = Field(..., gt=0, description="Baseline refresh rate", examples=[1.0])
    epsilon: float = Field(
        default=DEFAULT_EPSILON,
        gt=0,
        description="Exponent damping the gradient term at large radii",
        examples=[0.5, 1.0],
    )


RefreshPolicy = Annotated[ConstantRefresh | PositionDependentRefresh, Field(discriminator="kind")]


class HorizonConfig(BaseModel):
    """Stopping rule for a simulation: a time span or a number of jump events."""

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        json_schema_extra={"examples": [{"duration": 1000.0}, {"event_count": 500}]},
    )

    duration: float | None = Field(default=None, gt=0, description="Total simulated time T")
    event_count: int | None = Field(
        default=None, ge=1, description="Number of bounce/refresh events N"
    )

    @model_validator(mode="after")
    def validate_exclusive(self) -> HorizonConfig:
        """Require exactly one stopping rule."""
        if (self.duration is None) == (self.event_count is None):
            raise ValueError(ERROR_HORIZON_EXCLUSIVE)
        return self


class EventKind(str, Enum):
    """Kinds of points recorded on a trajectory."""

    INIT = "init"
    BOUNCE = "bounce"
    REFRESH = "refresh"
    FINAL = "final"


@dataclass(frozen=True)
class State:
    """Position and unit velocity."""

    x: FloatArray
    v: FloatArray

    def __post_init__(self) -> None:
        x = np.asarray(self.x, dtype=float)
        v = np.asarray(self.v, dtype=float)
        if x.ndim != 1 or x.shape != v.shape:
            raise ValueError(ERROR_STATE_SHAPE)
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > UNIT_SPEED_TOLERANCE:
            raise ValueError(ERROR_VELOCITY_NOT_UNIT.format(norm=norm))
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "v", v)

    @property
    def dimension(self) -> int:
        """Length of the position vector."""
        return int(self.x.size)


@dataclass(frozen=True)
class Event:
    """A point of the trajectory: the time and the state right after the event."""

    time: float
    kind: EventKind
    state: State


@dataclass(frozen=True)
class Trajectory:
    """Piecewise-linear path recorded at event times.

    Between consecutive events the position moves at unit speed along the velocity
    stored with the earlier event. Arrays are read-only once constructed.
    """

    times: FloatArray
    kinds: tuple[EventKind, ...]
    positions: FloatArray
    velocities: FloatArray
    policy: ConstantRefresh | PositionDependentRefresh
    target: TargetConfig | None = None
    seed: int | None = None
    chain: int = 0

    def __post_init__(self) -> None:
        if len(self.kinds) == 0:
            raise TrajectoryError(ERROR_EMPTY_TRAJECTORY, "trajectory")
        for name in ("times", "positions", "velocities"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def from_events(
        cls,
        events: list[Event],
        policy: ConstantRefresh | PositionDependentRefresh,
        *,
        target: TargetConfig | None = None,
        seed: int | None = None,
        chain: int = 0,
    ) -> Trajectory:
        """Pack an ordered event list into arrays."""
        if not events:
            raise TrajectoryError(ERROR_EMPTY_TRAJECTORY, "from_events")
        return cls(
            times=np.array([e.time for e in events]),
            kinds=tuple(e.kind for e in events),
            positions=np.stack([e.state.x for e in events]),
            velocities=np.stack([e.state.v for e in events]),
            policy=policy,
            target=target,
            seed=seed,
            chain=chain,
        )

    def __len__(self) -> int:
        return len(self.kinds)

    @property
    def dimension(self) -> int:
        """State-space dimension."""
        return int(self.positions.shape[1])

    @property
    def start_time(self) -> float:
        """Time of the first recorded event."""
        return float(self.times[0])

    @property
    def end_time(self) -> float:
        """Time of the last recorded event."""
        return float(self.times[-1])

    @property
    def duration(self) -> float:
        """Length of the recorded time span."""
        return self.end_time - self.start_time

    @property
    def jump_mask(self) -> np.ndarray:
        """Boolean mask selecting bounce and refresh events."""
        return np.array([k in (EventKind.BOUNCE, EventKind.REFRESH) for k in self.kinds])

    def events(self) -> Iterator[Event]:
        """Iterate over the recorded events."""
        for t, kind, x, v in zip(
            self.times, self.kinds, self.positions, self.velocities, strict=True
        ):
            yield Event(float(t), kind, State(x, v))

    def segments(self) -> tuple[FloatArray, FloatArray, FloatArray, FloatArray]:
        """Return (start times, start positions, velocities, lengths) of each linear piece."""
        lengths = np.diff(self.times)
        return self.times[:-1], self.positions[:-1], self.velocities[:-1], lengths

    def positions_at(self, times: FloatArray) -> FloatArray:
        """Interpolate positions at the given times.

        Raises:
            TrajectoryError: If any time lies outside the recorded span
        """
        query = np.atleast_1d(np.asarray(times, dtype=float))
        bad = (query < self.start_time) | (query > self.end_time)
        if np.any(bad):
            raise TrajectoryError(
                ERROR_TIME_OUT_OF_RANGE.format(
                    time=float(query[bad][0]), start=self.start_time, end=self.end_time
                ),
                "positions_at",
                time=float(query[bad][0]),
            )
        idx = np.searchsorted(self.times, query, side="right") - 1
        idx = np.clip(idx, 0, len(self) - 1)
        offsets = query - self.times[idx]
        return self.positions[idx] + offsets[:, None] * self.velocities[idx]

    def position_at(self, time: float) -> FloatArray:
        """Interpolate the position at a single time."""
        return self.positions_at(np.array([time]))[0]
