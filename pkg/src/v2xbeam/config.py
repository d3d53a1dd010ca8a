"""Scenario documents (YAML) to and from :class:`ScenarioConfig`.

Unknown keys are rejected. Numbers may be written as YAML numbers or numeric
strings (PyYAML reads ``5.9e9`` as a string).
"""

from __future__ import annotations

import math
from dataclasses import replace
from typing import Any

import yaml

from .antenna import (
    DEFAULT_FLOOR_GAIN,
    DEFAULT_HPBW,
    DEFAULT_OMNI_GAIN,
    DEFAULT_PEAK_GAIN,
    AntennaArray,
    AntennaSelection,
)
from .errors import ConfigError, InvalidArgumentError
from .geometry import DEFAULT_HEIGHT, Position
from .propagation import (
    CORNER_OFFSET,
    DEFAULT_DIFFRACTION_PENALTY,
    DEFAULT_MAX_DIFFRACTIONS,
    DEFAULT_TRANSMISSION_LOSS,
    Environment,
    Obstacle,
)
from .scenario import (
    DEFAULT_FREQUENCY,
    DEFAULT_RSSI_OFFSET,
    DEFAULT_RX_GAIN,
    DEFAULT_TX_POWER,
    MODES,
    CoverageSettings,
    ScenarioConfig,
    build_trajectory,
)
from .switching import SwitchModel, SwitchPolicy

TOP_KEYS = {
    "frequency", "tx_power", "rx_gain", "rx_losses", "tx_extra_losses", "rssi_offset", "mode",
    "rsu_position", "antenna", "switch", "environment", "trajectory", "coverage", "link",
}
ANTENNA_KEYS = {"peak_gain", "half_power_beamwidth", "floor_gain", "omni_gain"}
SWITCH_KEYS = {"activation_halfwidth", "switch_latency", "insertion_loss", "isolation"}
ENV_KEYS = {"obstacles", "diffraction_penalty", "max_diffractions", "corner_offset"}
OBSTACLE_KEYS = {"name", "footprint", "transmission_loss"}
POSITION_KEYS = {"east", "north", "height"}
SAMPLE_KEYS = POSITION_KEYS | {"heading", "time"}
COVERAGE_KEYS = {"origin", "width", "height", "cell_size", "tx", "heading", "selection", "rx_height"}
LINK_KEYS = {"distances"}


def _check_keys(doc: Any, allowed: set[str], where: str) -> dict:
    if doc is None:
        return {}
    if not isinstance(doc, dict):
        raise ConfigError(f"{where or 'document'} must be a mapping", where or None)
    for key in doc:
        if key not in allowed:
            path = f"{where}.{key}" if where else str(key)
            raise ConfigError(f"unknown key {path!r}", path)
    return doc


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool):
        raise ConfigError(f"{where} must be a number", where)
    try:
        out = float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{where} must be a number, got {value!r}", where) from None
    if not math.isfinite(out):
        raise ConfigError(f"{where} must be finite", where)
    return out


def _integer(value: Any, where: str) -> int:
    x = _number(value, where)
    if x != int(x):
        raise ConfigError(f"{where} must be an integer", where)
    return int(x)


def _get(doc: dict, key: str, default: float, where: str) -> float:
    if key not in doc:
        return default
    return _number(doc[key], f"{where}.{key}" if where else key)


def _position(doc: Any, where: str, default_height: float = DEFAULT_HEIGHT) -> Position:
    if isinstance(doc, (list, tuple)):
        if len(doc) not in (2, 3):
            raise ConfigError(f"{where} must have 2 or 3 coordinates", where)
        doc = dict(zip(("east", "north", "height"), doc))
    doc = _check_keys(doc, POSITION_KEYS, where)
    for key in ("east", "north"):
        if key not in doc:
            raise ConfigError(f"{where}.{key} is required", f"{where}.{key}")
    try:
        return Position(
            _number(doc["east"], f"{where}.east"),
            _number(doc["north"], f"{where}.north"),
            _get(doc, "height", default_height, where),
        )
    except InvalidArgumentError as exc:
        raise ConfigError(f"{where}: {exc}", where) from None


def _guard(where: str, build):
    try:
        return build()
    except InvalidArgumentError as exc:
        raise ConfigError(f"{where}: {exc}", where) from None


def _array(doc: Any) -> AntennaArray:
    doc = _check_keys(doc, ANTENNA_KEYS, "antenna")
    return _guard("antenna", lambda: AntennaArray.default(
        peak_gain=_get(doc, "peak_gain", DEFAULT_PEAK_GAIN, "antenna"),
        half_power_beamwidth=_get(doc, "half_power_beamwidth", DEFAULT_HPBW, "antenna"),
        floor_gain=_get(doc, "floor_gain", DEFAULT_FLOOR_GAIN, "antenna"),
        omni_gain=_get(doc, "omni_gain", DEFAULT_OMNI_GAIN, "antenna"),
    ))


def _environment(doc: Any) -> Environment:
    doc = _check_keys(doc, ENV_KEYS, "environment")
    obstacles = []
    raw = doc.get("obstacles") or []
    if not isinstance(raw, list):
        raise ConfigError("environment.obstacles must be a list", "environment.obstacles")
    for k, item in enumerate(raw):
        where = f"environment.obstacles[{k}]"
        item = _check_keys(item, OBSTACLE_KEYS, where)
        fp = item.get("footprint")
        if not isinstance(fp, list):
            raise ConfigError(f"{where}.footprint must be a list of [east, north] pairs", f"{where}.footprint")
        pts = []
        for m, v in enumerate(fp):
            p = _position(v, f"{where}.footprint[{m}]")
            pts.append((p.east, p.north))
        name = str(item.get("name", f"obstacle{k + 1}"))
        loss = _get(item, "transmission_loss", DEFAULT_TRANSMISSION_LOSS, where)
        obstacles.append(_guard(where, lambda: Obstacle(tuple(pts), loss, name)))
    max_diff = doc.get("max_diffractions", DEFAULT_MAX_DIFFRACTIONS)
    return _guard("environment", lambda: Environment(
        tuple(obstacles),
        diffraction_penalty=_get(doc, "diffraction_penalty", DEFAULT_DIFFRACTION_PENALTY, "environment"),
        max_diffractions=_integer(max_diff, "environment.max_diffractions"),
        corner_offset=_get(doc, "corner_offset", CORNER_OFFSET, "environment"),
    ))


def _trajectory(doc: Any):
    if not isinstance(doc, list) or not doc:
        raise ConfigError("trajectory must be a non-empty list of samples", "trajectory")
    positions, headings, times = [], [], []
    for k, item in enumerate(doc):
        where = f"trajectory[{k}]"
        if isinstance(item, (list, tuple)):
            if len(item) not in (2, 3):
                raise ConfigError(f"{where} must have 2 or 3 coordinates", where)
            item = dict(zip(("east", "north", "height"), item))
        item = _check_keys(item, SAMPLE_KEYS, where)
        positions.append(_position({k2: item[k2] for k2 in POSITION_KEYS if k2 in item}, where))
        headings.append(_number(item["heading"], f"{where}.heading") if "heading" in item else None)
        times.append(_number(item["time"], f"{where}.time") if "time" in item else None)
    return _guard("trajectory", lambda: build_trajectory(positions, headings, times))


def _coverage(doc: Any) -> CoverageSettings:
    doc = _check_keys(doc, COVERAGE_KEYS, "coverage")
    kwargs = {}
    if "origin" in doc:
        kwargs["origin"] = _position(doc["origin"], "coverage.origin")
    if "tx" in doc:
        kwargs["tx"] = _position(doc["tx"], "coverage.tx")
    for key in ("width", "height"):
        if key in doc:
            kwargs[key] = _integer(doc[key], f"coverage.{key}")
    for key in ("cell_size", "heading", "rx_height"):
        if key in doc:
            kwargs[key] = _number(doc[key], f"coverage.{key}")
    if "selection" in doc:
        kwargs["selection"] = _guard(
            "coverage.selection", lambda: AntennaSelection.from_label(str(doc["selection"]))
        )
    return _guard("coverage", lambda: replace(CoverageSettings(), **kwargs))


def config_from_dict(doc: Any) -> ScenarioConfig:
    """Validate a parsed document and apply defaults."""
    doc = _check_keys(doc, TOP_KEYS, "")
    if "rsu_position" not in doc:
        raise ConfigError("rsu_position is required", "rsu_position")
    if "trajectory" not in doc:
        raise ConfigError("trajectory is required", "trajectory")
    sw = _check_keys(doc.get("switch"), SWITCH_KEYS, "switch")
    policy = _guard("switch.activation_halfwidth", lambda: SwitchPolicy(
        _get(sw, "activation_halfwidth", SwitchPolicy().activation_halfwidth, "switch")))
    model = _guard("switch", lambda: SwitchModel(
        switch_latency=_get(sw, "switch_latency", SwitchModel().switch_latency, "switch"),
        insertion_loss=_get(sw, "insertion_loss", SwitchModel().insertion_loss, "switch"),
        isolation=_get(sw, "isolation", SwitchModel().isolation, "switch"),
    ))
    link = _check_keys(doc.get("link"), LINK_KEYS, "link")
    kwargs = {}
    if "distances" in link:
        raw = link["distances"]
        if not isinstance(raw, list) or not raw:
            raise ConfigError("link.distances must be a non-empty list", "link.distances")
        kwargs["distances"] = tuple(_number(d, f"link.distances[{k}]") for k, d in enumerate(raw))
        if any(d <= 0 for d in kwargs["distances"]):
            raise ConfigError("link.distances must be positive", "link.distances")
    mode = str(doc.get("mode", "switched"))
    if mode not in MODES:
        raise ConfigError(f"mode must be one of {', '.join(MODES)}", "mode")

    frequency = _get(doc, "frequency", DEFAULT_FREQUENCY, "")
    if frequency <= 0:
        raise ConfigError("frequency must be > 0", "frequency")
    values = {}
    for key in ("rx_losses", "tx_extra_losses"):
        values[key] = _get(doc, key, 0.0, "")
        if values[key] < 0:
            raise ConfigError(f"{key} must be >= 0", key)

    return _guard("scenario", lambda: ScenarioConfig(
        rsu_position=_position(doc["rsu_position"], "rsu_position"),
        trajectory=_trajectory(doc["trajectory"]),
        environment=_environment(doc.get("environment")),
        array=_array(doc.get("antenna")),
        policy=policy,
        switch=model,
        frequency=frequency,
        tx_power=_get(doc, "tx_power", DEFAULT_TX_POWER, ""),
        rx_gain=_get(doc, "rx_gain", DEFAULT_RX_GAIN, ""),
        rssi_offset=_get(doc, "rssi_offset", DEFAULT_RSSI_OFFSET, ""),
        mode=mode,
        coverage=_coverage(doc.get("coverage")),
        **values,
        **kwargs,
    ))


def parse_scenario_config(text: str) -> ScenarioConfig:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"malformed document: {exc}") from None
    return config_from_dict(doc)


def load_scenario_config(path) -> ScenarioConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_scenario_config(fh.read())


def _pos_dict(p: Position) -> dict:
    return {"east": p.east, "north": p.north, "height": p.height}


def config_to_dict(config: ScenarioConfig) -> dict:
    """Inverse of :func:`config_from_dict` with every default written out."""
    e0 = config.array.elements[0]
    env = config.environment
    cov = config.coverage
    return {
        "frequency": config.frequency,
        "tx_power": config.tx_power,
        "rx_gain": config.rx_gain,
        "rx_losses": config.rx_losses,
        "tx_extra_losses": config.tx_extra_losses,
        "rssi_offset": config.rssi_offset,
        "mode": config.mode,
        "rsu_position": _pos_dict(config.rsu_position),
        "antenna": {
            "peak_gain": e0.peak_gain,
            "half_power_beamwidth": e0.half_power_beamwidth,
            "floor_gain": e0.floor_gain,
            "omni_gain": config.array.omni.gain,
        },
        "switch": {
            "activation_halfwidth": config.policy.activation_halfwidth,
            "switch_latency": config.switch.switch_latency,
            "insertion_loss": config.switch.insertion_loss,
            "isolation": config.switch.isolation,
        },
        "environment": {
            "diffraction_penalty": env.diffraction_penalty,
            "max_diffractions": env.max_diffractions,
            "corner_offset": env.corner_offset,
            "obstacles": [
                {
                    "name": o.name,
                    "transmission_loss": o.transmission_loss,
                    "footprint": [[x, y] for x, y in o.footprint],
                }
                for o in env.obstacles
            ],
        },
        "trajectory": [
            {**_pos_dict(s.position), "heading": s.heading, "time": s.time} for s in config.trajectory
        ],
        "coverage": {
            "origin": _pos_dict(cov.origin),
            "width": cov.width,
            "height": cov.height,
            "cell_size": cov.cell_size,
            "tx": _pos_dict(cov.tx),
            "heading": cov.heading,
            "selection": cov.selection.label,
            "rx_height": cov.rx_height,
        },
        "link": {"distances": list(config.distances)},
    }


def dump_scenario_config(config: ScenarioConfig) -> str:
    return yaml.safe_dump(config_to_dict(config), sort_keys=False)


def apply_overrides(doc: dict, overrides: list[str]) -> dict:
    """Set ``dotted.key=value`` pairs on a raw document; values are read as YAML scalars."""
    doc = dict(doc or {})
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not of the form key=value")
        key, _, raw = item.partition("=")
        parts = key.strip().split(".")
        if not all(parts):
            raise ConfigError(f"override {item!r} has an empty key")
        try:
            value = yaml.safe_load(raw)
        except yaml.YAMLError:
            value = raw
        node = doc
        for p in parts[:-1]:
            child = node.get(p)
            child = dict(child) if isinstance(child, dict) else {}
            node[p] = child
            node = child
        node[parts[-1]] = value
    return doc


def array_from_dict(doc: Any) -> AntennaArray:
    """Antenna parameters from a possibly partial document (no trajectory needed)."""
    doc = _check_keys(doc, TOP_KEYS, "")
    return _array(doc.get("antenna"))
