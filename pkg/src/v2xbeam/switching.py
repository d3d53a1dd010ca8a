"""Geolocation-driven beam selection and the solid-state RF switch."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .antenna import OMNI, AntennaArray, AntennaSelection
from .errors import InvalidArgumentError
from .geometry import normalize_angle

DEFAULT_ACTIVATION_HALFWIDTH = 100.0
DEFAULT_SWITCH_LATENCY = 150e-9
DEFAULT_INSERTION_LOSS = 2.5
DEFAULT_ISOLATION = 30.0


@dataclass(frozen=True)
class SwitchPolicy:
    """Sector elements are used while the remote station lies within
    +/- ``activation_halfwidth`` degrees of the vehicle axis (bounds included)."""

    activation_halfwidth: float = DEFAULT_ACTIVATION_HALFWIDTH

    def __post_init__(self):
        if not 0 < self.activation_halfwidth <= 180:
            raise InvalidArgumentError("activation_halfwidth must lie in (0, 180]")


@dataclass(frozen=True)
class SwitchModel:
    switch_latency: float = DEFAULT_SWITCH_LATENCY
    insertion_loss: float = DEFAULT_INSERTION_LOSS
    isolation: float = DEFAULT_ISOLATION  # informational only

    def __post_init__(self):
        if not (math.isfinite(self.switch_latency) and self.switch_latency >= 0):
            raise InvalidArgumentError("switch_latency must be >= 0")
        if not (math.isfinite(self.insertion_loss) and self.insertion_loss >= 0):
            raise InvalidArgumentError("insertion_loss must be >= 0")
        if not math.isfinite(self.isolation):
            raise InvalidArgumentError("isolation must be finite")


@dataclass(frozen=True)
class SwitchState:
    """Switch position after the most recent command.

    ``last_switch_time`` is when the latest change settles; until then the link
    still runs on ``previous``. ``clock`` is the time of the latest command and
    guards against time running backwards.
    """

    active: AntennaSelection = OMNI
    last_switch_time: float = -math.inf
    switch_count: int = 0
    previous: AntennaSelection | None = None
    clock: float = -math.inf

    def is_switching(self, t: float) -> bool:
        return self.previous is not None and t < self.last_switch_time

    def selection_at(self, t: float) -> AntennaSelection:
        """Antenna actually carrying the signal at time ``t``."""
        return self.previous if self.is_switching(t) else self.active


def nearest_element(array: AntennaArray, theta_rel: float) -> int:
    """Element whose boresight is angularly closest to ``theta_rel``; lowest id on ties."""
    best_id, best_off = 1, math.inf
    for i, pattern in enumerate(array.elements, start=1):
        off = abs(normalize_angle(theta_rel - pattern.boresight))
        if off < best_off:
            best_id, best_off = i, off
    return best_id


def select_antenna(policy: SwitchPolicy, array: AntennaArray, theta_rel: float) -> AntennaSelection:
    theta = normalize_angle(theta_rel)
    if abs(theta) <= policy.activation_halfwidth:
        return AntennaSelection.sector(nearest_element(array, theta))
    return OMNI


def apply_switch(state: SwitchState, model: SwitchModel, desired: AntennaSelection, now: float) -> SwitchState:
    if now < state.clock:
        raise InvalidArgumentError(f"time went backwards: {now} < {state.clock}")
    if desired == state.active:
        return replace(state, clock=now)
    return SwitchState(
        active=desired,
        last_switch_time=now + model.switch_latency,
        switch_count=state.switch_count + 1,
        previous=state.selection_at(now),
        clock=now,
    )
