import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from v2xbeam.errors import InvalidArgumentError
from v2xbeam.linkbudget import (
    SPEED_OF_LIGHT,
    LinkBudget,
    directivity_ratio,
    distance_ratio_for_gain,
    free_space_path_loss,
    gain_from_directivity,
    received_power,
    received_power_inverse_square,
)

F = 5.9e9
# oracle: linear Friis ratio (4 pi d f / c)^2 in dB, evaluated independently of the 20 lg form
FSPL_1 = 47.86482345472626
FSPL_100 = 87.86482345472626
FSPL_127 = 89.94089787384542

distances = st.floats(min_value=1e-2, max_value=1e5)
freqs = st.floats(min_value=1e6, max_value=1e11)


def _friis_db(d, f):
    return 10 * math.log10((4 * math.pi * d * f / SPEED_OF_LIGHT) ** 2)


@pytest.mark.parametrize("d, expected", [(1, FSPL_1), (100, FSPL_100), (127, FSPL_127)])
def test_fspl_examples(d, expected):
    assert free_space_path_loss(d, F) == pytest.approx(expected, abs=1e-9)
    assert _friis_db(d, F) == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize("d, f", [(0, F), (-1, F), (100, 0), (100, -5)])
def test_fspl_rejects(d, f):
    with pytest.raises(InvalidArgumentError):
        free_space_path_loss(d, f)
    with pytest.raises(InvalidArgumentError):
        received_power_inverse_square(0.0, d, f)


def test_received_power_examples():
    assert received_power(LinkBudget()) == 0
    b = LinkBudget(tx_power=0, tx_losses=2.5, tx_gain=11, path_loss_fs=89.9405, rx_gain=16)
    assert received_power(b) == pytest.approx(-65.4405, abs=1e-12)
    iso = LinkBudget(path_loss_fs=free_space_path_loss(100, F))
    assert received_power(iso) == pytest.approx(-FSPL_100, abs=1e-9)


def test_inverse_square_examples():
    assert received_power_inverse_square(0, 100, F) == pytest.approx(-FSPL_100, abs=1e-9)
    p200 = received_power_inverse_square(0, 200, F)
    assert p200 == pytest.approx(-93.88542336800589, abs=1e-9)
    assert received_power_inverse_square(0, 100, F) - p200 == pytest.approx(6.0206, abs=1e-4)
    assert received_power_inverse_square(10, 100, F) == pytest.approx(10 - FSPL_100, abs=1e-9)


def test_link_budget_validation():
    with pytest.raises(InvalidArgumentError):
        LinkBudget(tx_losses=-1)
    with pytest.raises(InvalidArgumentError):
        LinkBudget(path_loss_div=-0.5)
    with pytest.raises(InvalidArgumentError):
        LinkBudget(tx_gain=math.inf)


def test_gain_and_directivity_examples():
    assert gain_from_directivity(1, 1) == 0
    assert gain_from_directivity(10, 1) == pytest.approx(10)
    assert gain_from_directivity(12.589, 1) == pytest.approx(11.0, abs=1e-3)
    assert directivity_ratio(1, 1) == 1
    assert directivity_ratio(5, 2.5) == 2
    assert gain_from_directivity(directivity_ratio(12.589, 1), 1) == pytest.approx(11.0, abs=1e-3)
    for bad in [(1, 0), (1, 1.01), (0, 1), (-1, 0.5)]:
        with pytest.raises(InvalidArgumentError):
            gain_from_directivity(*bad)
    for bad in [(0, 1), (1, 0), (-2, 1)]:
        with pytest.raises(InvalidArgumentError):
            directivity_ratio(*bad)


def test_distance_ratio_examples():
    assert distance_ratio_for_gain(0) == 1.0
    assert distance_ratio_for_gain(20 * math.log10(2)) == pytest.approx(2.0, abs=1e-12)
    assert distance_ratio_for_gain(8) == pytest.approx(2.5119, abs=1e-4)


@given(st.floats(-60, 40), distances, freqs)
def test_eq1_matches_inverse_square(p_t, d, f):
    b = LinkBudget(tx_power=p_t, path_loss_fs=free_space_path_loss(d, f))
    assert received_power(b) == pytest.approx(received_power_inverse_square(p_t, d, f), abs=1e-9)


@given(distances, freqs)
def test_fspl_doubling_and_monotone(d, f):
    assert free_space_path_loss(2 * d, f) - free_space_path_loss(d, f) == pytest.approx(20 * math.log10(2), abs=1e-9)
    assert free_space_path_loss(d * 1.001, f) > free_space_path_loss(d, f)
    assert free_space_path_loss(d, f * 1.001) > free_space_path_loss(d, f)


@given(st.floats(-50, 50), st.floats(-50, 50))
def test_distance_ratio_multiplicative(a, b):
    assert distance_ratio_for_gain(a + b) == pytest.approx(
        distance_ratio_for_gain(a) * distance_ratio_for_gain(b), rel=1e-12
    )


@given(st.floats(1e-3, 1e3), st.floats(1e-3, 1.0 - 1e-9))
def test_efficiency_never_raises_gain(d, eta):
    assert gain_from_directivity(d, eta) < gain_from_directivity(d, 1.0)
    assert gain_from_directivity(d) == gain_from_directivity(d, 1.0)
