import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from v2xbeam.errors import DegenerateGeometryError, InvalidArgumentError
from v2xbeam.geometry import Position, bearing, distance, normalize_angle, relative_bearing

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)
coord = st.floats(min_value=-1000, max_value=1000, allow_nan=False)
heights = st.floats(min_value=0, max_value=50, allow_nan=False)
positions = st.builds(Position, coord, coord, heights)


def _mod360_close(a, b, tol=1e-9):
    d = (a - b) % 360.0
    return min(d, 360.0 - d) <= tol


@pytest.mark.parametrize("raw, expected", [(0, 0), (190, -170), (-540, 180), (180, 180), (-180, 180), (360, 0)])
def test_normalize_angle_examples(raw, expected):
    assert normalize_angle(raw) == expected


@pytest.mark.parametrize("raw", [math.nan, math.inf, -math.inf])
def test_normalize_angle_rejects_non_finite(raw):
    with pytest.raises(InvalidArgumentError):
        normalize_angle(raw)


@given(finite)
def test_normalize_angle_range_and_idempotent(x):
    y = normalize_angle(x)
    assert -180.0 < y <= 180.0
    assert normalize_angle(y) == y
    assert _mod360_close(x, y, tol=1e-6)


def test_distance_examples():
    assert distance(Position(0, 0, 1.8), Position(0, 0, 1.8)) == 0
    assert distance(Position(0, 0, 1.8), Position(3, 4, 1.8)) == 5
    assert distance(Position(0, 0, 0), Position(1, 1, 1)) == pytest.approx(math.sqrt(3), abs=1e-7)


@given(positions, positions, positions)
def test_distance_symmetric_and_triangle(a, b, c):
    assert distance(a, b) == distance(b, a)
    assert distance(a, c) <= distance(a, b) + distance(b, c) + 1e-9


def test_position_validation():
    assert Position(1, 2).height == 1.80
    with pytest.raises(InvalidArgumentError):
        Position(0, 0, -1)
    with pytest.raises(InvalidArgumentError):
        Position(math.nan, 0)


@pytest.mark.parametrize("to, expected", [((0, 10), 0), ((10, 0), 90), ((-5, -5), -135), ((0, -3), 180)])
def test_bearing_examples(to, expected):
    assert bearing(Position(0, 0), Position(*to)) == pytest.approx(expected, abs=1e-12)


def test_bearing_degenerate():
    with pytest.raises(DegenerateGeometryError):
        bearing(Position(1, 1, 0), Position(1, 1, 5))


@pytest.mark.parametrize(
    "heading, remote, expected", [(0, (0, 100), 0), (0, (100, 0), 90), (90, (0, 100), -90)]
)
def test_relative_bearing_examples(heading, remote, expected):
    assert relative_bearing(Position(0, 0), heading, Position(*remote)) == pytest.approx(expected, abs=1e-12)


def _distinct(a, b):
    return math.hypot(a.east - b.east, a.north - b.north) > 1e-3


@given(positions, finite, positions)
def test_relative_bearing_plus_heading_is_bearing(own, heading, remote):
    if not _distinct(own, remote):
        return
    assert _mod360_close(relative_bearing(own, heading, remote) + heading, bearing(own, remote), tol=1e-6)


@given(positions, st.floats(-180, 180), positions, st.floats(-360, 360))
def test_relative_bearing_rotation_invariant(own, heading, remote, rot):
    if not _distinct(own, remote):
        return
    before = relative_bearing(own, heading, remote)
    # rotate remote about own by rot degrees clockwise (compass sense)
    r = math.radians(rot)
    de, dn = remote.east - own.east, remote.north - own.north
    rotated = Position(
        own.east + de * math.cos(r) + dn * math.sin(r),
        own.north - de * math.sin(r) + dn * math.cos(r),
        remote.height,
    )
    after = relative_bearing(own, heading + rot, rotated)
    assert _mod360_close(before, after, tol=1e-9)
