"""Bouncy Particle Sampler service driving the event loop."""

from __future__ import annotations

import time

import numpy as np

from bpskit.exceptions import DimensionMismatchError
from bpskit.logging import LoggingService
from bpskit.numerics import FloatArray
from bpskit.targets import Target

from .event_time import EventTimeMethod, sample_event_time, select_method
from .kinematics import reflect, sample_velocity
from .sampler_models import (
    ConstantRefresh,
    Event,
    EventKind,
    HorizonConfig,
    PositionDependentRefresh,
    State,
    Trajectory,
)


class BouncyParticleSampler:
    """Simulates the bouncy particle process for one target and refresh policy.

    A single simulation is strictly sequential; independent chains may run in
    parallel on separate instances or share one, since no mutable state is kept.
    """

    def __init__(
        self,
        logger: LoggingService,
        target: Target,
        policy: ConstantRefresh | PositionDependentRefresh,
        event_time_method: EventTimeMethod | None = None,
    ) -> None:
        """Create a sampler.

        Args:
            logger: LoggingService instance for structured logging
            target: Target potential
            policy: Refresh policy
            event_time_method: Strategy override for event times
        """
        self.log = logger
        self.target = target
        self.policy = policy
        self.event_time_method = event_time_method or select_method(target, policy)
        self.log.debug(
            "Initialized sampler",
            family=target.family,
            dimension=target.dimension,
            policy=policy.kind,
            event_time_method=self.event_time_method.value,
        )

    def initial_state(self, rng: np.random.Generator, x: FloatArray | None = None) -> State:
        """Start at x (origin by default) with a uniformly drawn velocity."""
        position = np.zeros(self.target.dimension) if x is None else np.asarray(x, dtype=float)
        position = self.target.check_vector(position, "initial_state")
        return State(position, sample_velocity(rng, self.target.dimension))

    def step(
        self,
        state: State,
        rng: np.random.Generator,
        time_now: float = 0.0,
    ) -> tuple[Event, State]:
        """Advance to the next jump and apply a bounce or a refresh.

        Args:
            state: Current state
            rng: Random stream
            time_now: Absolute time of `state`

        Returns:
            The event (stamped with absolute time) and the post-event state
        """
        draw = sample_event_time(
            self.target, self.policy, state.x, state.v, rng, self.event_time_method
        )
        x_new = state.x + draw.tau * state.v
        if rng.random() * draw.total_rate < draw.bounce_rate:
            v_new = reflect(self.target.grad(x_new), state.v)
            kind = EventKind.BOUNCE
        else:
            v_new = sample_velocity(rng, self.target.dimension)
            kind = EventKind.REFRESH
        new_state = State(x_new, v_new)
        return Event(time_now + draw.tau, kind, new_state), new_state

    def simulate(
        self,
        init: State,
        horizon: HorizonConfig,
        rng: np.random.Generator,
        *,
        seed: int | None = None,
        chain: int = 0,
    ) -> Trajectory:
        """Run the process from `init` until the horizon.

        Duration horizons end with a FINAL event at exactly T; event-count
        horizons end at the N-th jump.

        Args:
            init: Initial state
            horizon: Stopping rule
            rng: Random stream for this chain
            seed: Master seed, recorded for provenance
            chain: Chain index, recorded for provenance

        Returns:
            The recorded trajectory
        """
        if init.dimension != self.target.dimension:
            raise DimensionMismatchError("simulate", self.target.dimension, init.dimension)

        started = time.perf_counter()
        events = [Event(0.0, EventKind.INIT, init)]
        state = init
        now = 0.0
        jumps = 0
        try:
            while True:
                event, next_state = self.step(state, rng, now)
                if horizon.duration is not None and event.time >= horizon.duration:
                    final_x = state.x + (horizon.duration - now) * state.v
                    events.append(Event(horizon.duration, EventKind.FINAL, State(final_x, state.v)))
                    break
                events.append(event)
                jumps += 1
                state, now = next_state, event.time
                if horizon.event_count is not None and jumps >= horizon.event_count:
                    break
        except Exception:
            self.log.exception(
                "Simulation failed",
                family=self.target.family,
                chain=chain,
                time=now,
                events=len(events),
            )
            raise

        trajectory = Trajectory.from_events(
            events, self.policy, target=self.target.config, seed=seed, chain=chain
        )
        bounces = sum(1 for k in trajectory.kinds if k is EventKind.BOUNCE)
        self.log.info(
            "Simulation complete",
            family=self.target.family,
            chain=chain,
            events=len(trajectory),
            bounces=bounces,
            refreshes=jumps - bounces,
            duration=trajectory.duration,
            elapsed_ms=round((time.perf_counter() - started) * 1000, 2),
        )
        return trajectory
