"""Simulation toolkit for a vehicle-mounted switched sector-antenna array talking to roadside units."""

from .antenna import (
    OMNI,
    AntennaArray,
    AntennaSelection,
    OmniPattern,
    SectorPattern,
    array_gain,
    best_element_by_gain,
    element_boresight,
    sector_gain,
)
from .config import dump_scenario_config, load_scenario_config, parse_scenario_config
from .errors import ConfigError, DegenerateGeometryError, InvalidArgumentError
from .geometry import Position, bearing, distance, normalize_angle, relative_bearing
from .linkbudget import (
    LinkBudget,
    directivity_ratio,
    distance_ratio_for_gain,
    free_space_path_loss,
    gain_from_directivity,
    received_power,
    received_power_inverse_square,
)
from .propagation import CoverageGrid, Environment, Obstacle, PathResult, coverage_grid, dominant_path_loss, los_crossings
from .scenario import (
    ComparisonResult,
    SampleResult,
    ScenarioConfig,
    TrajectorySample,
    compare_runs,
    distance_run,
    rotation_sweep,
    rssi_from_pr,
    run_scenario,
)
from .switching import SwitchModel, SwitchPolicy, SwitchState, apply_switch, select_antenna

__version__ = "0.1.0"
