"""Simplified dominant-path propagation over 2D obstacle footprints.

Obstacles are infinite-height prisms. Between two positions only one path is
kept, the one with least total loss among

* the straight path, charged free-space loss plus each obstacle's
  ``transmission_loss`` once per penetration, and
* polylines through up to ``max_diffractions`` corner points that cross no
  wall, charged free-space loss over the polyline length plus
  ``diffraction_penalty`` per corner.

Corner points are the convex-hull vertices of each footprint pushed
``corner_offset`` meters outward along the vertex bisector.

A segment that only touches a vertex or runs along an edge does not cross the
boundary: polygon interiors are open sets.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .antenna import AntennaArray, AntennaSelection, array_gain
from .errors import InvalidArgumentError
from .geometry import Position, relative_bearing
from .linkbudget import LinkBudget, free_space_path_loss, received_power

Point = tuple[float, float]

DEFAULT_TRANSMISSION_LOSS = 12.0
DEFAULT_DIFFRACTION_PENALTY = 10.0
DEFAULT_MAX_DIFFRACTIONS = 1
CORNER_OFFSET = 0.1

_EPS_T = 1e-12
_EPS_LEN = 1e-9


def _orient(a: Point, b: Point, c: Point) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _segments_properly_cross(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    d1, d2 = _orient(q1, q2, p1), _orient(q1, q2, p2)
    d3, d4 = _orient(p1, p2, q1), _orient(p1, p2, q2)
    return d1 * d2 < 0 and d3 * d4 < 0


def _point_on_segment(p: Point, a: Point, b: Point, tol: float = _EPS_LEN) -> bool:
    ab = (b[0] - a[0], b[1] - a[1])
    ap = (p[0] - a[0], p[1] - a[1])
    length2 = ab[0] ** 2 + ab[1] ** 2
    if length2 == 0.0:
        return math.hypot(*ap) <= tol
    t = min(1.0, max(0.0, (ap[0] * ab[0] + ap[1] * ab[1]) / length2))
    return math.hypot(ap[0] - t * ab[0], ap[1] - t * ab[1]) <= tol


def _strictly_inside(p: Point, ring: Sequence[Point]) -> bool:
    """Even-odd point-in-polygon; points on the boundary are outside."""
    inside = False
    n = len(ring)
    for k in range(n):
        a, b = ring[k], ring[(k + 1) % n]
        if _point_on_segment(p, a, b):
            return False
        if (a[1] > p[1]) != (b[1] > p[1]):
            x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
            if x > p[0]:
                inside = not inside
    return inside


def _convex_hull(points: Sequence[Point]) -> list[Point]:
    """Counter-clockwise hull without collinear vertices (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts

    def half(seq):
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and _orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower, upper = half(pts), half(reversed(pts))
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class Obstacle:
    """Footprint polygon (east, north vertices) with a per-penetration loss in dB."""

    footprint: tuple[Point, ...]
    transmission_loss: float = DEFAULT_TRANSMISSION_LOSS
    name: str = ""

    def __post_init__(self):
        ring = tuple(
            (float(v.east), float(v.north)) if isinstance(v, Position) else (float(v[0]), float(v[1]))
            for v in self.footprint
        )
        if len(ring) > 1 and ring[0] == ring[-1]:
            ring = ring[:-1]
        object.__setattr__(self, "footprint", ring)
        if len(ring) < 3:
            raise InvalidArgumentError(f"obstacle {self.name!r} needs at least 3 vertices")
        if not all(math.isfinite(c) for v in ring for c in v):
            raise InvalidArgumentError(f"obstacle {self.name!r} has non-finite vertices")
        if not (math.isfinite(self.transmission_loss) and self.transmission_loss >= 0):
            raise InvalidArgumentError(f"obstacle {self.name!r}: transmission_loss must be >= 0")
        if abs(self._signed_area()) == 0.0:
            raise InvalidArgumentError(f"obstacle {self.name!r} has zero area")
        n = len(ring)
        for i in range(n):
            for j in range(i + 1, n):
                if j == i + 1 or (i == 0 and j == n - 1):
                    continue
                if _segments_properly_cross(ring[i], ring[(i + 1) % n], ring[j], ring[(j + 1) % n]):
                    raise InvalidArgumentError(f"obstacle {self.name!r} is self-intersecting")

    def _signed_area(self) -> float:
        ring = self.footprint
        return 0.5 * sum(
            ring[k][0] * ring[(k + 1) % len(ring)][1] - ring[(k + 1) % len(ring)][0] * ring[k][1]
            for k in range(len(ring))
        )

    @cached_property
    def bbox(self) -> tuple[float, float, float, float]:
        xs = [v[0] for v in self.footprint]
        ys = [v[1] for v in self.footprint]
        return min(xs), min(ys), max(xs), max(ys)

    def contains(self, p: Point) -> bool:
        x0, y0, x1, y1 = self.bbox
        if not (x0 < p[0] < x1 and y0 < p[1] < y1):
            return False
        return _strictly_inside(p, self.footprint)

    def corner_points(self, offset: float = CORNER_OFFSET) -> list[Point]:
        hull = _convex_hull(self.footprint)
        out = []
        n = len(hull)
        for k, v in enumerate(hull):
            prev, nxt = hull[k - 1], hull[(k + 1) % n]
            u1 = _unit((v[0] - prev[0], v[1] - prev[1]))
            u2 = _unit((v[0] - nxt[0], v[1] - nxt[1]))
            d = _unit((u1[0] + u2[0], u1[1] + u2[1]))
            out.append((v[0] + offset * d[0], v[1] + offset * d[1]))
        return out

    def boundary_crossings(self, p: Point, q: Point) -> int:
        """Number of times segment p-q passes between outside and interior."""
        x0, y0, x1, y1 = self.bbox
        if max(p[0], q[0]) < x0 or min(p[0], q[0]) > x1 or max(p[1], q[1]) < y0 or min(p[1], q[1]) > y1:
            return 0
        cuts = [0.0, 1.0]
        ring = self.footprint
        dx, dy = q[0] - p[0], q[1] - p[1]
        n = len(ring)
        for k in range(n):
            a, b = ring[k], ring[(k + 1) % n]
            ex, ey = b[0] - a[0], b[1] - a[1]
            denom = dx * ey - dy * ex
            wx, wy = a[0] - p[0], a[1] - p[1]
            if denom == 0.0:
                if wx * dy - wy * dx != 0.0:
                    continue
                # collinear: the edge endpoints split the segment
                seg2 = dx * dx + dy * dy
                for c in (a, b):
                    t = ((c[0] - p[0]) * dx + (c[1] - p[1]) * dy) / seg2
                    if 0.0 < t < 1.0:
                        cuts.append(t)
                continue
            t = (wx * ey - wy * ex) / denom
            s = (wx * dy - wy * dx) / denom
            if -_EPS_T <= t <= 1.0 + _EPS_T and -_EPS_T <= s <= 1.0 + _EPS_T:
                cuts.append(min(1.0, max(0.0, t)))
        cuts.sort()
        states = []
        for t0, t1 in zip(cuts, cuts[1:]):
            if t1 - t0 <= _EPS_T:
                continue
            tm = 0.5 * (t0 + t1)
            inside = _strictly_inside((p[0] + tm * dx, p[1] + tm * dy), ring)
            if not states or states[-1] != inside:
                states.append(inside)
        return len(states) - 1 if states else 0


def _unit(v: Point) -> Point:
    n = math.hypot(v[0], v[1])
    return (v[0] / n, v[1] / n)


@dataclass(frozen=True)
class Environment:
    obstacles: tuple[Obstacle, ...] = ()
    diffraction_penalty: float = DEFAULT_DIFFRACTION_PENALTY
    max_diffractions: int = DEFAULT_MAX_DIFFRACTIONS
    corner_offset: float = CORNER_OFFSET

    def __post_init__(self):
        object.__setattr__(self, "obstacles", tuple(self.obstacles))
        if not (math.isfinite(self.diffraction_penalty) and self.diffraction_penalty >= 0):
            raise InvalidArgumentError("diffraction_penalty must be >= 0")
        if isinstance(self.max_diffractions, bool) or not isinstance(self.max_diffractions, int) or self.max_diffractions < 0:
            raise InvalidArgumentError("max_diffractions must be a non-negative integer")
        if not self.corner_offset > 0:
            raise InvalidArgumentError("corner_offset must be positive")

    @cached_property
    def corners(self) -> tuple[Point, ...]:
        """Candidate diffraction corners, excluding any that fall inside an obstacle."""
        pts = []
        for obs in self.obstacles:
            for c in obs.corner_points(self.corner_offset):
                if not any(o.contains(c) for o in self.obstacles):
                    pts.append(c)
        return tuple(pts)

    @cached_property
    def corner_links(self) -> tuple[tuple[float | None, ...], ...]:
        """Pairwise horizontal corner distances, ``None`` where the leg is blocked."""
        cs = self.corners
        table = [[None] * len(cs) for _ in cs]
        for i in range(len(cs)):
            for j in range(i + 1, len(cs)):
                if self.is_clear(cs[i], cs[j]):
                    table[i][j] = table[j][i] = math.dist(cs[i], cs[j])
        return tuple(tuple(row) for row in table)

    def is_clear(self, p: Point, q: Point) -> bool:
        return all(o.boundary_crossings(p, q) == 0 for o in self.obstacles)


def los_crossings(env: Environment, a: Position, b: Position) -> list[tuple[Obstacle, int]]:
    """Obstacles whose boundary the segment a-b crosses, with crossing counts.

    An empty list means unobstructed line of sight.
    """
    if a.east == b.east and a.north == b.north:
        raise InvalidArgumentError("segment endpoints coincide horizontally")
    out = []
    for obs in env.obstacles:
        n = obs.boundary_crossings(a.xy, b.xy)
        if n:
            out.append((obs, n))
    return out


def penetration_loss(crossings: list[tuple[Obstacle, int]]) -> float:
    """Wall loss of a straight path; each entry into (or exit from) an obstacle counts once."""
    return sum(obs.transmission_loss * math.ceil(n / 2) for obs, n in crossings)


@dataclass(frozen=True)
class PathResult:
    kind: str  # "direct" | "diffracted"
    vertices: tuple[Position, ...]
    length: float
    free_space_loss: float
    excess_loss: float

    @property
    def total_loss(self) -> float:
        return self.free_space_loss + self.excess_loss

    @property
    def diffractions(self) -> int:
        return len(self.vertices) - 2


def _lift(a: Position, b: Position, corners: Sequence[Point], legs: Sequence[float]) -> tuple[Position, ...]:
    total = sum(legs)
    out = [a]
    run = 0.0
    for c, leg in zip(corners, legs):
        run += leg
        out.append(Position(c[0], c[1], a.height + (b.height - a.height) * run / total))
    out.append(b)
    return tuple(out)


def dominant_path_loss(env: Environment, a: Position, b: Position, f: float) -> PathResult:
    """Least-loss path between ``a`` and ``b`` at frequency ``f`` Hz."""
    crossings = los_crossings(env, a, b)
    if not f > 0:
        raise InvalidArgumentError("frequency must be positive")
    dz = b.height - a.height
    direct_len = math.hypot(math.hypot(b.east - a.east, b.north - a.north), dz)
    direct = PathResult(
        "direct", (a, b), direct_len, free_space_path_loss(direct_len, f), penetration_loss(crossings)
    )
    if not crossings or env.max_diffractions == 0 or not env.corners:
        return direct
    # every diffracted path is at least as long as the direct one
    if direct.total_loss <= direct.free_space_loss + env.diffraction_penalty:
        return direct

    corners = env.corners
    links = env.corner_links
    n = len(corners)
    to_b = [math.dist(c, b.xy) if env.is_clear(c, b.xy) else None for c in corners]
    layer = [math.dist(a.xy, c) if env.is_clear(a.xy, c) else None for c in corners]
    back: list[list[int | None]] = [[None] * n]

    best = direct
    for k in range(1, env.max_diffractions + 1):
        if k > 1:
            nxt: list[float | None] = [None] * n
            pred: list[int | None] = [None] * n
            for i in range(n):
                if layer[i] is None:
                    continue
                for j in range(n):
                    leg = links[i][j]
                    if leg is None:
                        continue
                    cand = layer[i] + leg
                    if nxt[j] is None or cand < nxt[j]:
                        nxt[j], pred[j] = cand, i
            layer = nxt
            back.append(pred)
        end, end_len = None, math.inf
        for i in range(n):
            if layer[i] is not None and to_b[i] is not None and layer[i] + to_b[i] < end_len:
                end, end_len = i, layer[i] + to_b[i]
        if end is None:
            continue
        length = math.hypot(end_len, dz)
        fs = free_space_path_loss(length, f)
        excess = env.diffraction_penalty * k
        if fs + excess < best.total_loss:
            chain = [end]
            for level in range(k - 1, 0, -1):
                chain.append(back[level][chain[-1]])
            chain.reverse()
            pts = [corners[i] for i in chain]
            legs = [math.dist(p, q) for p, q in zip([a.xy] + pts, pts + [b.xy])]
            verts = _lift(a, b, pts, legs[:-1])
            best = PathResult("diffracted", verts, length, fs, excess)
    return best


NOT_COMPUTED = float("nan")


@dataclass(eq=False)
class CoverageGrid:
    """Received power (dBm) at cell centers.

    ``values[j, i]`` is the cell ``i`` steps east and ``j`` steps north of
    ``origin``, the south-west corner of the region. The transmitter's own cell
    holds NaN.
    """

    origin: Position
    cell_size: float
    width: int
    height: int
    values: np.ndarray = field(repr=False)

    def cell_center(self, i: int, j: int) -> tuple[float, float]:
        return (
            self.origin.east + (i + 0.5) * self.cell_size,
            self.origin.north + (j + 0.5) * self.cell_size,
        )

    def rows(self):
        """Yield (east, north, p_r_dbm) in row-major order from the south-west cell."""
        for j in range(self.height):
            for i in range(self.width):
                e, n = self.cell_center(i, j)
                yield e, n, float(self.values[j, i])


@dataclass(frozen=True)
class _GridJob:
    env: Environment
    tx: Position
    array: AntennaArray
    selection: AntennaSelection
    heading: float
    budget: LinkBudget
    f: float
    origin: Position
    cell_size: float
    width: int
    rx_height: float
    tx_cell: tuple[int, int] | None


def _grid_row(job: _GridJob, j: int) -> list[float]:
    row = []
    for i in range(job.width):
        if job.tx_cell == (i, j):
            row.append(NOT_COMPUTED)
            continue
        cell = Position(
            job.origin.east + (i + 0.5) * job.cell_size,
            job.origin.north + (j + 0.5) * job.cell_size,
            job.rx_height,
        )
        theta = relative_bearing(job.tx, job.heading, cell)
        path = dominant_path_loss(job.env, job.tx, cell, job.f)
        b = job.budget
        budget = LinkBudget(
            tx_power=b.tx_power,
            tx_losses=b.tx_losses,
            tx_gain=array_gain(job.array, job.selection, theta),
            path_loss_fs=path.free_space_loss,
            path_loss_div=path.excess_loss,
            rx_gain=b.rx_gain,
            rx_losses=b.rx_losses,
        )
        row.append(received_power(budget))
    return row


def _grid_row_star(args):
    return _grid_row(*args)


def coverage_grid(
    env: Environment,
    tx: Position,
    array: AntennaArray,
    selection: AntennaSelection,
    heading: float,
    budget_template: LinkBudget,
    f: float,
    origin: Position,
    width: int,
    height: int,
    cell_size: float = 1.0,
    rx_height: float | None = None,
    workers: int | None = None,
) -> CoverageGrid:
    """Rasterize received power around a transmitter at ``tx``.

    ``budget_template`` supplies transmit power, transmit-side losses and the
    receive side; antenna gain and path losses are filled per cell. With
    ``workers > 1`` rows are evaluated in worker processes; the result is
    identical to the sequential one.
    """
    if not cell_size > 0:
        raise InvalidArgumentError("cell_size must be positive")
    if width < 1 or height < 1:
        raise InvalidArgumentError("coverage region must be non-empty")
    if not f > 0:
        raise InvalidArgumentError("frequency must be positive")
    rx_height = tx.height if rx_height is None else rx_height
    ti = math.floor((tx.east - origin.east) / cell_size)
    tj = math.floor((tx.north - origin.north) / cell_size)
    tx_cell = (ti, tj) if 0 <= ti < width and 0 <= tj < height else None
    job = _GridJob(env, tx, array, selection, heading, budget_template, f, origin,
                   cell_size, width, rx_height, tx_cell)
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_grid_row_star, [(job, j) for j in range(height)]))
    else:
        rows = [_grid_row(job, j) for j in range(height)]
    return CoverageGrid(origin, cell_size, width, height, np.array(rows, dtype=float))
