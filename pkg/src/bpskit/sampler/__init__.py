"""Bouncy Particle Sampler core: kinematics, event times and the simulation loop."""

from .event_time import (
    EventTimeDraw,
    EventTimeMethod,
    invert_affine_hazard,
    sample_event_time,
    select_method,
)
from .kinematics import (
    bounce_rate,
    rates_at,
    reflect,
    refresh_rate,
    refresh_rate_gradient,
    sample_velocity,
    total_rate,
)
from .rng import chain_generator, derived_seed
from .sampler_models import (
    ConstantRefresh,
    Event,
    EventKind,
    HorizonConfig,
    PositionDependentRefresh,
    RefreshPolicy,
    State,
    Trajectory,
)
from .sampler_service import BouncyParticleSampler

__all__ = [
    "BouncyParticleSampler",
    "ConstantRefresh",
    "Event",
    "EventKind",
    "EventTimeDraw",
    "EventTimeMethod",
    "HorizonConfig",
    "PositionDependentRefresh",
    "RefreshPolicy",
    "State",
    "Trajectory",
    "bounce_rate",
    "chain_generator",
    "derived_seed",
    "invert_affine_hazard",
    "rates_at",
    "reflect",
    "refresh_rate",
    "refresh_rate_gradient",
    "sample_event_time",
    "sample_velocity",
    "select_method",
    "total_rate",
]
