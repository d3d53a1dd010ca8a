"""Planar east/north/up geometry: distances, compass bearings, relative angles.

Angles are plain floats in degrees. Every angle returned by this module is
normalized to the half-open interval (-180, 180].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateGeometryError, InvalidArgumentError

DEFAULT_HEIGHT = 1.80


@dataclass(frozen=True)
class Position:
    """Point in a local tangent plane, meters."""

    east: float
    north: float
    height: float = DEFAULT_HEIGHT

    def __post_init__(self):
        for name in ("east", "north", "height"):
            value = float(getattr(self, name))
            object.__setattr__(self, name, value)
            if not math.isfinite(value):
                raise InvalidArgumentError(f"{name} must be finite, got {value!r}")
        if self.height < 0:
            raise InvalidArgumentError(f"height must be >= 0, got {self.height!r}")

    @property
    def xy(self) -> tuple[float, float]:
        return (self.east, self.north)


def normalize_angle(raw: float) -> float:
    """Wrap ``raw`` degrees into (-180, 180]."""
    if not math.isfinite(raw):
        raise InvalidArgumentError(f"angle must be finite, got {raw!r}")
    wrapped = math.fmod(raw, 360.0)
    if wrapped > 180.0:
        wrapped -= 360.0
    elif wrapped <= -180.0:
        wrapped += 360.0
    return wrapped + 0.0  # folds -0.0 into 0.0


def distance(a: Position, b: Position) -> float:
    return math.dist((a.east, a.north, a.height), (b.east, b.north, b.height))


def horizontal_distance(a: Position, b: Position) -> float:
    return math.hypot(b.east - a.east, b.north - a.north)


def bearing(src: Position, dst: Position) -> float:
    """Compass bearing from ``src`` to ``dst``: 0 = north, 90 = east."""
    de = dst.east - src.east
    dn = dst.north - src.north
    if de == 0.0 and dn == 0.0:
        raise DegenerateGeometryError(
            f"bearing undefined between coincident points ({src.east}, {src.north})"
        )
    return normalize_angle(math.degrees(math.atan2(de, dn)))


def relative_bearing(own: Position, heading: float, remote: Position) -> float:
    """Angle of ``remote`` measured from the longitudinal axis of a vehicle at ``own``.

    Positive values lie to the right of the axis.
    """
    return normalize_angle(bearing(own, remote) - heading)
