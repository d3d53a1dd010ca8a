import hashlib
import math

import numpy as np
import pytest

from v2xbeam.antenna import OMNI, AntennaSelection
from v2xbeam.geometry import Position
from v2xbeam.output import emit_csv, raster_text, run_rows, to_csv_text
from v2xbeam.propagation import CoverageGrid
from v2xbeam.scenario import SampleResult


def _result():
    return SampleResult(1, Position(0, 2.5), 0.0, -7.5, AntennaSelection.sector(4), 10.666666, -63.69815, -71.69815)


def test_empty_results_give_header_only(tmp_path):
    path = tmp_path / "out.csv"
    emit_csv([], "run", path)
    assert path.read_text() == (
        "index,east_m,north_m,heading_deg,theta_rel_deg,selection,tx_gain_dbi,p_r_dbm,rssi_dbm\n"
    )


def test_one_result_two_lines(tmp_path):
    path = tmp_path / "out.csv"
    emit_csv(run_rows([_result()]), "run", path)
    data = path.read_bytes()
    assert data.count(b"\n") == 2 and b"\r" not in data
    assert data.decode().splitlines()[1] == "1,0.0000,2.5000,0.0000,-7.5000,ant4,10.6667,-63.6981,-71.6981"


def test_byte_identical(tmp_path):
    rows = run_rows([_result(), _result()])
    emit_csv(rows, "run", tmp_path / "a.csv")
    emit_csv(rows, "run", tmp_path / "b.csv")
    h = [hashlib.sha256((tmp_path / n).read_bytes()).hexdigest() for n in ("a.csv", "b.csv")]
    assert h[0] == h[1]


def test_schema_mismatch_and_unwritable(tmp_path):
    with pytest.raises(ValueError):
        to_csv_text([(1, 2)], "run")
    with pytest.raises(OSError):
        emit_csv([], "run", tmp_path / "missing" / "x.csv")


def test_nan_formatting():
    r = SampleResult(3, Position(0, 0), 0.0, math.nan, OMNI, math.nan, math.nan, math.nan, True)
    assert to_csv_text(run_rows([r]), "run").splitlines()[1] == "3,0.0000,0.0000,0.0000,NaN,omni,NaN,NaN,NaN"


def test_raster_is_north_up():
    values = np.array([[1.0, 2.0], [3.0, math.nan]])  # row 0 is the southern row
    grid = CoverageGrid(Position(0, 0), 1.0, 2, 2, values)
    assert raster_text(grid) == "3.0000;NaN\n1.0000;2.0000\n"
    assert list(grid.rows())[1] == (1.5, 0.5, 2.0)
