"""Switched sector array: eight horn elements plus an omnidirectional sleeve antenna.

Each sector element uses the usual parabolic-in-dB main lobe with a hard floor:

    G(x) = peak - min(12 * (x / hpbw)**2, peak - floor)

where ``x`` is the azimuth offset from the element boresight. Gains depend on
azimuth only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidArgumentError
from .geometry import normalize_angle

N_ELEMENTS = 8
SECTOR_SPACING = 15.0

DEFAULT_PEAK_GAIN = 11.0
DEFAULT_HPBW = 45.0
DEFAULT_FLOOR_GAIN = -21.0
DEFAULT_OMNI_GAIN = 2.0


@dataclass(frozen=True)
class SectorPattern:
    peak_gain: float
    boresight: float
    half_power_beamwidth: float
    floor_gain: float

    def __post_init__(self):
        for name in ("peak_gain", "boresight", "half_power_beamwidth", "floor_gain"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidArgumentError(f"{name} must be finite")
        if not self.peak_gain > self.floor_gain:
            raise InvalidArgumentError("peak_gain must exceed floor_gain")
        if not 0.0 < self.half_power_beamwidth < 180.0:
            raise InvalidArgumentError("half_power_beamwidth must lie in (0, 180)")


@dataclass(frozen=True)
class OmniPattern:
    gain: float = DEFAULT_OMNI_GAIN

    def __post_init__(self):
        if not math.isfinite(self.gain):
            raise InvalidArgumentError("omni gain must be finite")


@dataclass(frozen=True, order=True)
class AntennaSelection:
    """Either one sector element (``element`` in 1..8) or the omni antenna (``element is None``)."""

    element: int | None = None

    def __post_init__(self):
        if self.element is not None and not 1 <= self.element <= N_ELEMENTS:
            raise InvalidArgumentError(f"element id must be in 1..{N_ELEMENTS}, got {self.element}")

    @classmethod
    def omni(cls) -> AntennaSelection:
        return cls(None)

    @classmethod
    def sector(cls, element: int) -> AntennaSelection:
        return cls(int(element))

    @property
    def is_omni(self) -> bool:
        return self.element is None

    @property
    def label(self) -> str:
        return "omni" if self.element is None else f"ant{self.element}"

    @classmethod
    def from_label(cls, label: str) -> AntennaSelection:
        text = label.strip().lower()
        if text == "omni":
            return cls.omni()
        if text.startswith("ant") and text[3:].isdigit():
            return cls.sector(int(text[3:]))
        raise InvalidArgumentError(f"unrecognized antenna selection {label!r}")

    def __str__(self) -> str:
        return self.label


OMNI = AntennaSelection.omni()


def element_boresight(element: int) -> float:
    """Boresight of element ``element``: 1 is leftmost (-52.5), 8 rightmost (+52.5)."""
    if isinstance(element, bool) or not isinstance(element, int) or not 1 <= element <= N_ELEMENTS:
        raise InvalidArgumentError(f"element id must be an integer in 1..{N_ELEMENTS}, got {element!r}")
    return (element - 4.5) * SECTOR_SPACING


@dataclass(frozen=True)
class AntennaArray:
    elements: tuple[SectorPattern, ...]
    omni: OmniPattern = OmniPattern()

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if len(self.elements) != N_ELEMENTS:
            raise InvalidArgumentError(f"array needs exactly {N_ELEMENTS} elements")
        sights = [e.boresight for e in self.elements]
        if any(b <= a for a, b in zip(sights, sights[1:])):
            raise InvalidArgumentError("element boresights must be strictly increasing")
        if any(abs(a + b) > 1e-9 for a, b in zip(sights, reversed(sights))):
            raise InvalidArgumentError("element boresights must be symmetric about 0")

    @classmethod
    def default(
        cls,
        peak_gain: float = DEFAULT_PEAK_GAIN,
        half_power_beamwidth: float = DEFAULT_HPBW,
        floor_gain: float = DEFAULT_FLOOR_GAIN,
        omni_gain: float = DEFAULT_OMNI_GAIN,
    ) -> AntennaArray:
        elements = tuple(
            SectorPattern(peak_gain, element_boresight(i), half_power_beamwidth, floor_gain)
            for i in range(1, N_ELEMENTS + 1)
        )
        return cls(elements, OmniPattern(omni_gain))

    def element(self, element: int) -> SectorPattern:
        element_boresight(element)
        return self.elements[element - 1]


def sector_gain(pattern: SectorPattern, theta_rel: float) -> float:
    offset = normalize_angle(theta_rel - pattern.boresight)
    rolloff = 12.0 * (offset / pattern.half_power_beamwidth) ** 2
    return pattern.peak_gain - min(rolloff, pattern.peak_gain - pattern.floor_gain)


def array_gain(array: AntennaArray, selection: AntennaSelection, theta_rel: float) -> float:
    if selection.is_omni:
        return array.omni.gain
    return sector_gain(array.element(selection.element), theta_rel)


def best_element_by_gain(array: AntennaArray, theta_rel: float) -> int:
    """Element id with the highest gain toward ``theta_rel``; lowest id wins ties."""
    best_id, best_gain = 1, -math.inf
    for i, pattern in enumerate(array.elements, start=1):
        g = sector_gain(pattern, theta_rel)
        if g > best_gain:
            best_id, best_gain = i, g
    return best_id
