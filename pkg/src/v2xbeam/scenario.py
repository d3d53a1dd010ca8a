"""Deterministic replications of the three experiments.

* :func:`rotation_sweep` - array rotated in front of a fixed receiver, every element switched in turn.
* :func:`distance_run` - receiver straight ahead at a list of distances, every antenna.
* :func:`run_scenario` / :func:`compare_runs` - vehicle trajectory past a roadside unit
  with automatic beam selection, against an omni-only baseline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .antenna import OMNI, AntennaArray, AntennaSelection, array_gain
from .errors import DegenerateGeometryError, InvalidArgumentError
from .geometry import Position, bearing, relative_bearing
from .linkbudget import LinkBudget, received_power
from .propagation import Environment, dominant_path_loss
from .switching import SwitchModel, SwitchPolicy, SwitchState, apply_switch, select_antenna

DEFAULT_FREQUENCY = 5.9e9
DEFAULT_TX_POWER = 0.0
DEFAULT_RX_GAIN = 16.0
DEFAULT_RSSI_OFFSET = -8.0

SWITCHED = "switched"
OMNI_ONLY = "omni"
MODES = (SWITCHED, OMNI_ONLY)


@dataclass(frozen=True)
class TrajectorySample:
    index: int
    time: float
    position: Position
    heading: float


@dataclass(frozen=True)
class CoverageSettings:
    """Region and transmitter placement for coverage grids.

    ``origin`` is the south-west corner of the region; ``width`` and ``height``
    count cells.
    """

    origin: Position = Position(-50.0, -10.0)
    width: int = 100
    height: int = 140
    cell_size: float = 1.0
    tx: Position = Position(0.0, 0.0)
    heading: float = 0.0
    selection: AntennaSelection = AntennaSelection.sector(4)
    rx_height: float = 1.80

    def __post_init__(self):
        if not self.cell_size > 0:
            raise InvalidArgumentError("cell_size must be positive")
        if self.width < 1 or self.height < 1:
            raise InvalidArgumentError("coverage width and height must be >= 1")


@dataclass(frozen=True)
class ScenarioConfig:
    rsu_position: Position
    trajectory: tuple[TrajectorySample, ...]
    environment: Environment = Environment()
    array: AntennaArray = field(default_factory=AntennaArray.default)
    policy: SwitchPolicy = SwitchPolicy()
    switch: SwitchModel = SwitchModel()
    frequency: float = DEFAULT_FREQUENCY
    tx_power: float = DEFAULT_TX_POWER
    rx_gain: float = DEFAULT_RX_GAIN
    rx_losses: float = 0.0
    tx_extra_losses: float = 0.0
    rssi_offset: float = DEFAULT_RSSI_OFFSET
    mode: str = SWITCHED
    coverage: CoverageSettings = CoverageSettings()
    distances: tuple[float, ...] = (10.0, 20.0, 40.0, 60.0, 80.0, 100.0, 121.0, 127.0)

    def __post_init__(self):
        object.__setattr__(self, "trajectory", tuple(self.trajectory))
        object.__setattr__(self, "distances", tuple(self.distances))
        if not self.trajectory:
            raise InvalidArgumentError("trajectory must not be empty")
        for k, s in enumerate(self.trajectory, start=1):
            if s.index != k:
                raise InvalidArgumentError("trajectory indices must run contiguously from 1")
            if k > 1 and s.time < self.trajectory[k - 2].time:
                raise InvalidArgumentError("trajectory times must be non-decreasing")
        if not (math.isfinite(self.frequency) and self.frequency > 0):
            raise InvalidArgumentError("frequency must be positive")
        if self.mode not in MODES:
            raise InvalidArgumentError(f"mode must be one of {MODES}")
        for name in ("rx_losses", "tx_extra_losses"):
            if not getattr(self, name) >= 0:
                raise InvalidArgumentError(f"{name} must be >= 0")
        if any(not d > 0 for d in self.distances):
            raise InvalidArgumentError("distances must be positive")


def build_trajectory(
    positions: Sequence[Position],
    headings: Sequence[float | None] | None = None,
    times: Sequence[float | None] | None = None,
    spacing: float = 1.0,
) -> tuple[TrajectorySample, ...]:
    """Number samples from 1 and fill missing headings and times.

    A missing heading is the bearing to the next sample (the last sample, or one
    whose successor coincides with it, keeps the previous heading). Missing
    times advance by ``spacing`` seconds.
    """
    n = len(positions)
    headings = list(headings) if headings is not None else [None] * n
    times = list(times) if times is not None else [None] * n
    out = []
    prev_heading = 0.0
    prev_time = None
    for k, pos in enumerate(positions):
        h = headings[k]
        if h is None:
            h = prev_heading
            if k + 1 < n:
                try:
                    h = bearing(pos, positions[k + 1])
                except DegenerateGeometryError:
                    pass
        t = times[k]
        if t is None:
            t = 0.0 if prev_time is None else prev_time + spacing
        out.append(TrajectorySample(k + 1, float(t), pos, float(h)))
        prev_heading, prev_time = h, t
    return tuple(out)


@dataclass(frozen=True)
class SampleResult:
    """One measurement point. ``degenerate`` marks a vehicle sitting on the RSU;
    its angle and power fields are NaN."""

    index: int
    position: Position
    heading: float
    theta_rel: float
    selection: AntennaSelection
    tx_gain: float
    p_r: float
    rssi: float
    degenerate: bool = False


@dataclass(frozen=True)
class ComparisonResult:
    indices: tuple[int, ...]
    delta_rss: tuple[float, ...]
    mean_delta: float


def rssi_from_pr(p_r: float, offset: float = DEFAULT_RSSI_OFFSET) -> float:
    return p_r + offset


def _tx_losses(config: ScenarioConfig, selection: AntennaSelection) -> float:
    # the omni sleeve antenna has its own feed and bypasses the RF switch
    if selection.is_omni:
        return config.tx_extra_losses
    return config.tx_extra_losses + config.switch.insertion_loss


def link_power(
    config: ScenarioConfig, selection: AntennaSelection, vehicle: Position, heading: float, remote: Position
) -> tuple[float, float, float]:
    """(theta_rel, tx_gain, p_r) for one vehicle-to-remote link."""
    theta = relative_bearing(vehicle, heading, remote)
    gain = array_gain(config.array, selection, theta)
    path = dominant_path_loss(config.environment, vehicle, remote, config.frequency)
    budget = LinkBudget(
        tx_power=config.tx_power,
        tx_losses=_tx_losses(config, selection),
        tx_gain=gain,
        path_loss_fs=path.free_space_loss,
        path_loss_div=path.excess_loss,
        rx_gain=config.rx_gain,
        rx_losses=config.rx_losses,
    )
    return theta, gain, received_power(budget)


def run_scenario(config: ScenarioConfig) -> list[SampleResult]:
    """Drive the trajectory, selecting an antenna per sample.

    The switch is commanded at each sample time and the sample is read once the
    switch has settled, so the commanded antenna is the one measured.
    """
    state = SwitchState()
    results = []
    nan = math.nan
    for sample in config.trajectory:
        try:
            theta = relative_bearing(sample.position, sample.heading, config.rsu_position)
        except DegenerateGeometryError:
            results.append(
                SampleResult(sample.index, sample.position, sample.heading, nan, state.active, nan, nan, nan, True)
            )
            continue
        if config.mode == SWITCHED:
            desired = select_antenna(config.policy, config.array, theta)
        else:
            desired = OMNI
        state = apply_switch(state, config.switch, desired, sample.time)
        selection = state.selection_at(sample.time + config.switch.switch_latency)
        theta, gain, p_r = link_power(config, selection, sample.position, sample.heading, config.rsu_position)
        results.append(
            SampleResult(
                sample.index, sample.position, sample.heading, theta, selection, gain, p_r,
                rssi_from_pr(p_r, config.rssi_offset),
            )
        )
    return results


def compare_runs(switched: Sequence[SampleResult], omni: Sequence[SampleResult]) -> ComparisonResult:
    """Per-index RSSI gain of the switched run over the omni run.

    Degenerate samples yield NaN deltas and are left out of the mean.
    """
    idx_a = [s.index for s in switched]
    idx_b = [s.index for s in omni]
    if idx_a != idx_b:
        raise InvalidArgumentError("runs do not share the same trajectory indices")
    deltas = tuple(a.rssi - b.rssi for a, b in zip(switched, omni))
    finite = [d for d in deltas if math.isfinite(d)]
    mean = math.fsum(finite) / len(finite) if finite else math.nan
    return ComparisonResult(tuple(idx_a), deltas, mean)


@dataclass(frozen=True)
class SweepRow:
    theta: float
    element: int
    gain: float


@dataclass(frozen=True)
class SweepTable:
    rows: tuple[SweepRow, ...]
    best: tuple[SweepRow, ...]  # one per angle


def _angle_steps(start: float, stop: float, step: float) -> list[float]:
    if not step > 0:
        raise InvalidArgumentError("step must be positive")
    count = int(math.floor((stop - start) / step + 1e-9))
    return [start + k * step for k in range(count + 1)]


def rotation_sweep(
    array: AntennaArray, start: float = -60.0, stop: float = 60.0, step: float = 5.0
) -> SweepTable:
    """Gain of every element toward a receiver fixed at the array's rotation angle.

    Rotating the array by ``theta`` puts the receiver at relative bearing
    ``theta`` in the array frame.
    """
    rows, best = [], []
    for theta in _angle_steps(start, stop, step):
        per_angle = [
            SweepRow(theta, i, array_gain(array, AntennaSelection.sector(i), theta))
            for i in range(1, len(array.elements) + 1)
        ]
        rows.extend(per_angle)
        top = per_angle[0]
        for r in per_angle[1:]:
            if r.gain > top.gain:
                top = r
        best.append(top)
    return SweepTable(tuple(rows), tuple(best))


@dataclass(frozen=True)
class DistanceRow:
    distance: float
    selection: AntennaSelection
    p_r: float


def distance_run(config: ScenarioConfig, distances: Sequence[float] | None = None) -> list[DistanceRow]:
    """Received power for each fixed antenna with the receiver straight ahead.

    The vehicle sits at the origin heading north at the RSU height; the receiver
    is ``d`` meters due north.
    """
    distances = config.distances if distances is None else tuple(distances)
    h = config.rsu_position.height
    vehicle = Position(0.0, 0.0, h)
    selections = [AntennaSelection.sector(i) for i in range(1, len(config.array.elements) + 1)] + [OMNI]
    rows = []
    for d in distances:
        if not d > 0:
            raise InvalidArgumentError("distances must be positive")
        rx = Position(0.0, float(d), h)
        for sel in selections:
            _, _, p_r = link_power(config, sel, vehicle, 0.0, rx)
            rows.append(DistanceRow(float(d), sel, p_r))
    return rows
