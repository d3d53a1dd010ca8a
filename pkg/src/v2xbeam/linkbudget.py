"""Link budget arithmetic in dB / dBm / dBi.

Linear-domain conversion happens only in :func:`received_power_inverse_square`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

from .errors import InvalidArgumentError

SPEED_OF_LIGHT = 299_792_458.0
_FSPL_CONSTANT = 20.0 * math.log10(SPEED_OF_LIGHT / (4.0 * math.pi))


@dataclass(frozen=True)
class LinkBudget:
    """One transmitter-to-receiver power account.

    tx_power is dBm, gains are dBi, everything else is dB. ``path_loss_div`` is the
    excess loss beyond free space (obstructions, diffraction).
    """

    tx_power: float = 0.0
    tx_losses: float = 0.0
    tx_gain: float = 0.0
    path_loss_fs: float = 0.0
    path_loss_div: float = 0.0
    rx_gain: float = 0.0
    rx_losses: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            if not math.isfinite(getattr(self, f.name)):
                raise InvalidArgumentError(f"{f.name} must be finite")
        for name in ("tx_losses", "path_loss_div", "rx_losses"):
            if getattr(self, name) < 0:
                raise InvalidArgumentError(f"{name} must be >= 0")


def free_space_path_loss(d: float, f: float) -> float:
    """Free-space loss in dB over ``d`` meters at ``f`` Hz."""
    if not d > 0 or not f > 0:
        raise InvalidArgumentError(f"distance and frequency must be positive (d={d!r}, f={f!r})")
    return 20.0 * math.log10(d) + 20.0 * math.log10(f) - _FSPL_CONSTANT


def received_power(budget: LinkBudget) -> float:
    b = budget
    return (
        b.tx_power
        - b.tx_losses
        + b.tx_gain
        - b.path_loss_fs
        - b.path_loss_div
        + b.rx_gain
        - b.rx_losses
    )


def received_power_inverse_square(tx_power: float, d: float, f: float) -> float:
    """Isotropic free-space received power (dBm) via the linear inverse-square law."""
    if not d > 0 or not f > 0:
        raise InvalidArgumentError(f"distance and frequency must be positive (d={d!r}, f={f!r})")
    tx_mw = 10.0 ** (tx_power / 10.0)
    rx_mw = tx_mw * (SPEED_OF_LIGHT / (4.0 * math.pi * d * f)) ** 2
    return 10.0 * math.log10(rx_mw)


def gain_from_directivity(directivity: float, efficiency: float = 1.0) -> float:
    if not directivity > 0:
        raise InvalidArgumentError("directivity must be positive")
    if not 0 < efficiency <= 1:
        raise InvalidArgumentError("radiation efficiency must lie in (0, 1]")
    return 10.0 * math.log10(directivity * efficiency)


def directivity_ratio(intensity: float, isotropic_intensity: float) -> float:
    if not intensity > 0 or not isotropic_intensity > 0:
        raise InvalidArgumentError("radiation intensities must be positive")
    return intensity / isotropic_intensity


def distance_ratio_for_gain(delta: float) -> float:
    """Factor by which free-space range grows for a ``delta`` dB margin improvement."""
    if not math.isfinite(delta):
        raise InvalidArgumentError("delta must be finite")
    return 10.0 ** (delta / 20.0)
