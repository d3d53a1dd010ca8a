"""Command-line entry point.

Exit status: 0 on success, 1 on validation errors, 2 on I/O errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace

import yaml

from . import output
from .antenna import OMNI, AntennaArray, AntennaSelection, array_gain
from .config import apply_overrides, array_from_dict, config_from_dict
from .errors import ConfigError, InvalidArgumentError
from .linkbudget import LinkBudget
from .propagation import coverage_grid
from .scenario import compare_runs, distance_run, rotation_sweep, run_scenario

log = logging.getLogger("v2xbeam")

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2

PATTERN_STEP_TENTHS = 1  # 0.1 degree resolution


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="v2xbeam", description="Switched sector-antenna V2X link simulator")
    common = _Parser(add_help=False)
    common.add_argument("--config", help="scenario YAML file")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                        help="override a config value, e.g. antenna.peak_gain=12 (repeatable)")
    common.add_argument("--mode", choices=("switched", "omni"), help="override the scenario mode")
    common.add_argument("-v", "--verbose", action="store_true")

    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("pattern", parents=[common], help="per-antenna gain over azimuth at 0.1 deg")
    sweep = sub.add_parser("sweep", parents=[common], help="rotation sweep over +/-60 deg")
    sweep.add_argument("--step", type=float, default=5.0, help="rotation step in degrees")
    sub.add_parser("link", parents=[common], help="received power over distance, every antenna")
    cov = sub.add_parser("coverage", parents=[common], help="received-power grid")
    cov.add_argument("--format", choices=("csv", "raster"), default="csv")
    cov.add_argument("--workers", type=int, default=None, help="worker processes for grid rows")
    sub.add_parser("run", parents=[common], help="trajectory run with automatic beam switching")
    sub.add_parser("compare", parents=[common], help="switched vs omni-only RSSI difference")
    return parser


def _raw_document(args) -> dict:
    doc = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            try:
                doc = yaml.safe_load(fh) or {}
            except yaml.YAMLError as exc:
                raise ConfigError(f"malformed document: {exc}") from None
    overrides = list(args.overrides)
    if args.mode:
        overrides.append(f"mode={args.mode}")
    return apply_overrides(doc, overrides)


def _scenario(args):
    if not args.config:
        raise ConfigError(f"the {args.command} command needs --config")
    return config_from_dict(_raw_document(args))


def _array(args) -> AntennaArray:
    return array_from_dict(_raw_document(args))


def _pattern_rows(array: AntennaArray):
    selections = [AntennaSelection.sector(i) for i in range(1, len(array.elements) + 1)] + [OMNI]
    rows = []
    for k in range(-1799, 1801, PATTERN_STEP_TENTHS):
        theta = k / 10.0
        for sel in selections:
            rows.append((theta, sel.label, array_gain(array, sel, theta)))
    return rows


def _execute(args) -> tuple[str, str]:
    """Return (text, summary) for the chosen command."""
    cmd = args.command
    if cmd == "pattern":
        return output.to_csv_text(_pattern_rows(_array(args)), "sweep"), "pattern dumped"
    if cmd == "sweep":
        table = rotation_sweep(_array(args), step=args.step)
        worst = min(table.best, key=lambda r: r.gain)
        return (output.to_csv_text(output.sweep_rows(table), "sweep"),
                f"{len(table.best)} angles, minimum best-element gain {worst.gain:.4f} dBi at {worst.theta:g} deg")
    config = _scenario(args)
    if cmd == "link":
        rows = distance_run(config)
        return output.to_csv_text(output.link_rows(rows), "link"), f"{len(rows)} rows"
    if cmd == "coverage":
        cov = config.coverage
        template = LinkBudget(
            tx_power=config.tx_power,
            tx_losses=config.tx_extra_losses + (0.0 if cov.selection.is_omni else config.switch.insertion_loss),
            rx_gain=config.rx_gain,
            rx_losses=config.rx_losses,
        )
        grid = coverage_grid(
            config.environment, cov.tx, config.array, cov.selection, cov.heading, template,
            config.frequency, cov.origin, cov.width, cov.height, cov.cell_size, cov.rx_height,
            workers=args.workers,
        )
        if args.format == "raster":
            text = output.raster_text(grid)
        else:
            text = output.to_csv_text(output.coverage_rows(grid), "coverage")
        return text, f"{cov.width}x{cov.height} grid for {cov.selection.label}"
    if cmd == "run":
        results = run_scenario(config)
        return output.to_csv_text(output.run_rows(results), "run"), f"{len(results)} samples ({config.mode})"
    if cmd == "compare":
        switched = run_scenario(replace(config, mode="switched"))
        omni = run_scenario(replace(config, mode="omni"))
        cmp = compare_runs(switched, omni)
        return output.to_csv_text(output.compare_rows(cmp), "compare"), f"mean delta {cmp.mean_delta:.4f} dB"
    raise UsageError(f"unknown command {cmd!r}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"v2xbeam: {exc}", file=sys.stderr)
        return EXIT_INVALID
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        text, summary = _execute(args)
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except (ConfigError, InvalidArgumentError, UsageError) as exc:
        print(f"v2xbeam: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"v2xbeam: {exc}", file=sys.stderr)
        return EXIT_IO
    log.info(summary)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
