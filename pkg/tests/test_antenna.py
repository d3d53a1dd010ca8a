import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from v2xbeam.antenna import (
    OMNI,
    AntennaArray,
    AntennaSelection,
    SectorPattern,
    array_gain,
    best_element_by_gain,
    element_boresight,
    sector_gain,
)
from v2xbeam.errors import InvalidArgumentError

DEFAULT = AntennaArray.default()
PATTERN = SectorPattern(peak_gain=11, boresight=0, half_power_beamwidth=45, floor_gain=-21)

sweep_0p1 = [k / 10 for k in range(-600, 601)]


@pytest.mark.parametrize("element, expected", [(4, -7.5), (8, 52.5), (1, -52.5), (5, 7.5)])
def test_element_boresight(element, expected):
    assert element_boresight(element) == expected


@pytest.mark.parametrize("bad", [0, 9, -1, 4.5, True])
def test_element_boresight_rejects(bad):
    with pytest.raises(InvalidArgumentError):
        element_boresight(bad)


@pytest.mark.parametrize("offset, expected", [(0, 11), (22.5, 8), (-22.5, 8), (90, -21), (180, -21)])
def test_sector_gain_examples(offset, expected):
    assert sector_gain(PATTERN, offset) == pytest.approx(expected, abs=1e-12)


def test_array_gain_examples():
    assert array_gain(DEFAULT, OMNI, 137) == 2
    assert array_gain(DEFAULT, AntennaSelection.sector(4), -7.5) == 11
    assert array_gain(DEFAULT, AntennaSelection.sector(5), -7.5) == pytest.approx(11 - 12 * (15 / 45) ** 2, abs=1e-12)
    assert 11 - 12 * (15 / 45) ** 2 == pytest.approx(9.6667, abs=1e-4)


@pytest.mark.parametrize("theta, expected", [(0, 4), (52.5, 8), (-30, 2), (-52.5, 1), (75, 8), (170, 1), (-170, 1)])
def test_best_element_by_gain_examples(theta, expected):
    # beyond ~100 deg every element sits on the floor, so the lowest id wins the tie
    assert best_element_by_gain(DEFAULT, theta) == expected


def test_best_element_brute_force_at_minus_30():
    gains = [sector_gain(p, -30) for p in DEFAULT.elements]
    assert gains[1] == gains[2] == max(gains)


@given(st.floats(-720, 720), st.floats(-20, 30), st.floats(1, 179), st.floats(0.5, 60), st.floats(-180, 180))
def test_sector_gain_bounded_and_even(theta, peak, hpbw, drop, boresight):
    p = SectorPattern(peak, boresight, hpbw, peak - drop)
    g = sector_gain(p, theta)
    assert p.floor_gain <= g <= p.peak_gain
    x = theta % 180
    assert sector_gain(p, boresight + x) == pytest.approx(sector_gain(p, boresight - x), abs=1e-12)


def test_default_array_covers_120_degrees_above_10_dbi():
    worst = min(max(sector_gain(p, t) for p in DEFAULT.elements) for t in sweep_0p1)
    assert worst >= 10.0


def test_best_element_equals_nearest_boresight_sweep():
    for t in sweep_0p1:
        offsets = [abs(t - (i - 4.5) * 15) for i in range(1, 9)]
        nearest = offsets.index(min(offsets)) + 1
        assert best_element_by_gain(DEFAULT, t) == nearest, t


def test_selection_labels_round_trip():
    for i in range(1, 9):
        s = AntennaSelection.sector(i)
        assert s.label == f"ant{i}"
        assert AntennaSelection.from_label(s.label) == s
    assert AntennaSelection.from_label("omni") == OMNI
    with pytest.raises(InvalidArgumentError):
        AntennaSelection.from_label("ant9")
    with pytest.raises(InvalidArgumentError):
        AntennaSelection.from_label("sector")


def test_invalid_patterns_and_arrays():
    with pytest.raises(InvalidArgumentError):
        SectorPattern(5, 0, 45, 5)
    with pytest.raises(InvalidArgumentError):
        SectorPattern(11, 0, 180, -21)
    with pytest.raises(InvalidArgumentError):
        AntennaArray(DEFAULT.elements[:7])
    shifted = tuple(SectorPattern(11, p.boresight + 1, 45, -21) for p in DEFAULT.elements)
    with pytest.raises(InvalidArgumentError):
        AntennaArray(shifted)
    with pytest.raises(InvalidArgumentError):
        AntennaArray(tuple(reversed(DEFAULT.elements)))
    assert math.isfinite(AntennaArray.default(peak_gain=12).elements[3].peak_gain)
