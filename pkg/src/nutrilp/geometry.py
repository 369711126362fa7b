"""Two-variable feasible-region analysis: constraint halfplanes, exact
vertex enumeration, least-cost vertex, filler-food projection, and a
deterministic SVG/JSON rendering of the region.

Vertex enumeration is O(h^3) pairwise line intersection plus a
feasibility filter — the halfplane counts here are tiny and exactness
beats cleverness.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .model import FoodItem, RequirementSet
from .nutrients import ENERGY, canonical_sorted

GE = ">="
LE = "<="

_VERTEX_TOL = 1e-9
_MERGE_TOL = 1e-7


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class Halfplane:
    """a*x + b*y (rel) rhs. nutrient is None for plain axis bounds."""

    a: float
    b: float
    rel: str
    rhs: float
    label: str
    nutrient: str | None = None

    def __post_init__(self):
        if self.a == 0.0 and self.b == 0.0:
            raise GeometryError("halfplane normal must be nonzero")
        if self.rel not in (GE, LE):
            raise GeometryError(f"relation must be {GE} or {LE}")

    def value(self, x: float, y: float) -> float:
        return self.a * x + self.b * y

    def scale(self) -> float:
        return max(abs(self.a), abs(self.b))

    def satisfied(self, x: float, y: float, tol: float = _VERTEX_TOL) -> bool:
        slack = self.value(x, y) - self.rhs
        margin = tol * self.scale() * max(1.0, abs(x), abs(y))
        return slack >= -margin if self.rel == GE else slack <= margin

    def inward_normal(self) -> tuple[float, float]:
        sign = 1.0 if self.rel == GE else -1.0
        return (sign * self.a, sign * self.b)


def axes_halfplanes() -> list[Halfplane]:
    return [
        Halfplane(1.0, 0.0, GE, 0.0, "x >= 0"),
        Halfplane(0.0, 1.0, GE, 0.0, "y >= 0"),
    ]


@dataclass(frozen=True)
class FeasibleRegion2D:
    vertices: tuple[tuple[float, float], ...]  # counterclockwise
    generators: tuple[tuple[int, ...], ...]  # halfplane indices per vertex
    halfplanes: tuple[Halfplane, ...]
    empty: bool
    bounded: bool


def _intersect(h1: Halfplane, h2: Halfplane) -> tuple[float, float] | None:
    det = h1.a * h2.b - h1.b * h2.a
    if abs(det) <= 1e-12 * h1.scale() * h2.scale():
        return None
    x = (h1.rhs * h2.b - h1.b * h2.rhs) / det
    y = (h1.a * h2.rhs - h1.rhs * h2.a) / det
    return (x + 0.0, y + 0.0)  # +0.0 folds -0.0 into 0.0


def _recession_direction(halfplanes, require_descent=None) -> tuple[float, float] | None:
    """A nonzero direction along which the region recedes, if any.

    In 2-D any nonzero recession cone contains a boundary ray of some
    constraint's half-circle of allowed directions (or an inward normal),
    so checking those candidates is exhaustive.
    """
    candidates = []
    for h in halfplanes:
        nx, ny = h.inward_normal()
        norm = math.hypot(nx, ny)
        nx, ny = nx / norm, ny / norm
        candidates += [(nx, ny), (-ny, nx), (ny, -nx)]
    for dx, dy in candidates:
        if all(h.inward_normal()[0] * dx + h.inward_normal()[1] * dy >= -1e-12 for h in halfplanes):
            if require_descent is None:
                return (dx, dy)
            px, py = require_descent
            if px * dx + py * dy < -1e-12:
                return (dx, dy)
    return None


def _all_parallel(halfplanes) -> bool:
    for h1, h2 in itertools.combinations(halfplanes, 2):
        if abs(h1.a * h2.b - h1.b * h2.a) > 1e-12 * h1.scale() * h2.scale():
            return False
    return True


def _parallel_family_nonempty(halfplanes) -> bool:
    """All boundary lines parallel: intersect the interval constraints on
    the common normal coordinate t = n.x."""
    ref = halfplanes[0]
    norm = math.hypot(ref.a, ref.b)
    nx, ny = ref.a / norm, ref.b / norm
    lo, hi = -math.inf, math.inf
    for h in halfplanes:
        # h.a, h.b is +-scale * (nx, ny); express rhs in t units.
        s = h.a * nx + h.b * ny
        t = h.rhs / s
        ge = (h.rel == GE) == (s > 0)
        if ge:
            lo = max(lo, t)
        else:
            hi = min(hi, t)
    return lo <= hi + 1e-12 * max(1.0, abs(lo), abs(hi))


def build_region(halfplanes: Sequence[Halfplane]) -> FeasibleRegion2D:
    """Exact vertex enumeration; an empty region is a valid result."""
    if not halfplanes:
        raise GeometryError("at least one halfplane required")
    hs = tuple(halfplanes)
    points: list[tuple[float, float]] = []
    for h1, h2 in itertools.combinations(hs, 2):
        pt = _intersect(h1, h2)
        if pt is None:
            continue
        if all(h.satisfied(*pt) for h in hs):
            points.append(pt)

    merged: list[tuple[float, float]] = []
    for pt in points:
        for q in merged:
            span = max(1.0, abs(pt[0]), abs(pt[1]))
            if math.hypot(pt[0] - q[0], pt[1] - q[1]) <= _MERGE_TOL * span:
                break
        else:
            merged.append(pt)

    if not merged:
        if _all_parallel(hs):
            empty = not _parallel_family_nonempty(hs)
        else:
            # Non-parallel boundaries with no feasible corner: a nonempty
            # polyhedron without vertices must contain a line, which needs
            # all-parallel boundaries. So: empty.
            empty = True
        return FeasibleRegion2D((), (), hs, empty=empty, bounded=empty)

    cx = sum(p[0] for p in merged) / len(merged)
    cy = sum(p[1] for p in merged) / len(merged)
    merged.sort(key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
    generators = []
    for x, y in merged:
        active = tuple(
            i
            for i, h in enumerate(hs)
            if abs(h.value(x, y) - h.rhs) <= 1e-7 * h.scale() * max(1.0, abs(x), abs(y))
        )
        generators.append(active)
    bounded = _recession_direction(hs) is None
    return FeasibleRegion2D(tuple(merged), tuple(generators), hs, empty=False, bounded=bounded)


def min_cost_vertex(
    region: FeasibleRegion2D, prices: tuple[float, float]
) -> tuple[tuple[float, float], float]:
    """Vertex minimizing the cost line; ties break on lower x then lower y."""
    if region.empty:
        raise GeometryError("region is empty")
    if not region.bounded and _recession_direction(region.halfplanes, prices) is not None:
        raise GeometryError("cost decreases without bound over the region")
    if not region.vertices:
        raise GeometryError("region has no vertices to optimize over")
    px, py = prices
    costs = [px * x + py * y for x, y in region.vertices]
    best = min(costs)
    tol = 1e-9 * (1.0 + abs(best))
    tied = [v for v, c in zip(region.vertices, costs) if c <= best + tol]
    vertex = min(tied)
    return vertex, px * vertex[0] + py * vertex[1]


def project_filler(
    halfplanes: Sequence[Halfplane], filler: FoodItem, servings_z: float
) -> list[Halfplane]:
    """Shift every nutrient row's rhs by the filler's contribution at the
    given serving level; axis halfplanes pass through unchanged."""
    if servings_z < 0:
        raise GeometryError("filler servings must be >= 0")
    out = []
    for h in halfplanes:
        if h.nutrient is None:
            out.append(h)
            continue
        shift = servings_z * filler.amount_of(h.nutrient)
        label = h.label if servings_z == 0 else f"{h.label} [{filler.id} z={servings_z:g}]"
        out.append(replace(h, rhs=h.rhs - shift, label=label))
    return out


def two_food_halfplanes(
    food_x: FoodItem,
    food_y: FoodItem,
    reqs: RequirementSet,
    include_energy: bool = True,
) -> list[Halfplane]:
    """Constraint halfplanes for a two-food slice of a requirement set.

    Slice semantics: bounds on nutrients that neither axis food carries
    are not drawable on this plane and are omitted (every constraint that
    IS drawn appears in the output, labeled). Whole-problem feasibility
    stays the diet solver's job.

    The energy equality enters as its >= half only: the energy line is
    still drawn, and at the solved filler level the <= half would pinch
    the region to a single point instead of the trapezoid whose corner
    sits on the line.
    """
    hs = axes_halfplanes()
    if include_energy:
        hs.append(
            Halfplane(
                food_x.energy_kcal,
                food_y.energy_kcal,
                GE,
                reqs.energy_kcal,
                f"energy = {reqs.energy_kcal:g} kcal",
                nutrient=ENERGY,
            )
        )
    for nutrient in canonical_sorted(reqs.bounds):
        ax = food_x.amount_of(nutrient)
        ay = food_y.amount_of(nutrient)
        if ax == 0.0 and ay == 0.0:
            continue
        lo = reqs.lower_bound(nutrient)
        hi = reqs.upper_bound(nutrient)
        if lo is not None and lo > 0:
            hs.append(Halfplane(ax, ay, GE, lo, f"{nutrient} >= {lo:g}", nutrient=nutrient))
        if hi is not None:
            hs.append(Halfplane(ax, ay, LE, hi, f"{nutrient} <= {hi:g}", nutrient=nutrient))
    return hs


# ---------------------------------------------------------------------------
# Rendering


_W, _H = 800, 600
_MARGIN_FRAC = 0.05


def _fmt(v: float) -> str:
    out = f"{v:.2f}"
    return "0.00" if out == "-0.00" else out


@dataclass(frozen=True)
class _Viewport:
    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def to_px(self, x: float, y: float) -> tuple[float, float]:
        mx, my = _W * _MARGIN_FRAC, _H * _MARGIN_FRAC
        sx = (_W - 2 * mx) / (self.xmax - self.xmin)
        sy = (_H - 2 * my) / (self.ymax - self.ymin)
        return (mx + (x - self.xmin) * sx, _H - my - (y - self.ymin) * sy)


def _viewport_for(region: FeasibleRegion2D) -> _Viewport:
    xs = [0.0] + [v[0] for v in region.vertices]
    ys = [0.0] + [v[1] for v in region.vertices]
    if not region.vertices:
        # Nothing to frame; fall back to the boundary-line intercepts.
        for h in region.halfplanes:
            if h.a != 0.0:
                xs.append(h.rhs / h.a)
            if h.b != 0.0:
                ys.append(h.rhs / h.b)
    xmax = max(max(xs) * 1.15, 1.0)
    ymax = max(max(ys) * 1.15, 1.0)
    return _Viewport(0.0, xmax, 0.0, ymax)


def _clip_line(a: float, b: float, rhs: float, vp: _Viewport):
    """Segment of a*x + b*y = rhs inside the viewport, or None."""
    pts = []
    if b != 0.0:
        for x in (vp.xmin, vp.xmax):
            y = (rhs - a * x) / b
            if vp.ymin - 1e-9 <= y <= vp.ymax + 1e-9:
                pts.append((x, y))
    if a != 0.0:
        for y in (vp.ymin, vp.ymax):
            x = (rhs - b * y) / a
            if vp.xmin - 1e-9 <= x <= vp.xmax + 1e-9:
                pts.append((x, y))
    uniq = []
    for p in pts:
        if all(math.hypot(p[0] - q[0], p[1] - q[1]) > 1e-9 for q in uniq):
            uniq.append(p)
    if len(uniq) < 2:
        return None
    uniq.sort()
    return uniq[0], uniq[-1]


def region_geometry(
    region: FeasibleRegion2D,
    prices: tuple[float, float] | None = None,
    cost_values: Sequence[float] = (),
) -> dict:
    """JSON-ready geometry dump shared by the SVG renderer and the UI."""
    vp = _viewport_for(region)
    optimum = None
    if prices is not None and not region.empty and region.vertices:
        try:
            vertex, _cost = min_cost_vertex(region, prices)
            optimum = [round(vertex[0], 6), round(vertex[1], 6)]
        except GeometryError:
            optimum = None
    edges = []
    nv = len(region.vertices)
    if nv >= 2:
        for i in range(nv if nv > 2 else 1):
            j = (i + 1) % nv
            shared = sorted(set(region.generators[i]) & set(region.generators[j]))
            edges.append(
                {
                    "from": i,
                    "to": j,
                    "label": region.halfplanes[shared[0]].label if shared else "",
                }
            )
    costlines = []
    if prices is not None:
        px, py = prices
        for cost in cost_values:
            seg = _clip_line(px, py, cost, vp)
            if seg:
                costlines.append(
                    {
                        "cost": round(cost, 6),
                        "segment": [
                            [round(seg[0][0], 6), round(seg[0][1], 6)],
                            [round(seg[1][0], 6), round(seg[1][1], 6)],
                        ],
                    }
                )
    return {
        "vertices": [[round(x, 6), round(y, 6)] for x, y in region.vertices],
        "edges": edges,
        "optimum": optimum,
        "costlines": costlines,
        "empty": region.empty,
        "bounded": region.bounded,
        "halfplanes": [
            {"a": h.a, "b": h.b, "rel": h.rel, "rhs": h.rhs, "label": h.label}
            for h in region.halfplanes
        ],
        "window": [vp.xmin, vp.xmax, vp.ymin, vp.ymax],
    }


def render_region(
    region: FeasibleRegion2D,
    prices: tuple[float, float] | None = None,
    cost_values: Sequence[float] = (),
    title: str = "Feasible region",
    axis_labels: tuple[str, str] = ("x (servings/day)", "y (servings/day)"),
) -> str:
    """Deterministic SVG: axes, boundary lines, shaded polygon, iso-cost
    lines and the optimum marker. Coordinates are rounded to 0.01 px so
    output is byte-stable; the data-to-pixel mapping is declared in
    data-* attributes on the root element.
    """
    vp = _viewport_for(region)
    mx, my = _W * _MARGIN_FRAC, _H * _MARGIN_FRAC
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" data-xmin="{vp.xmin:g}" data-xmax="{vp.xmax:g}" '
        f'data-ymin="{vp.ymin:g}" data-ymax="{vp.ymax:g}" data-margin-x="{mx:g}" '
        f'data-margin-y="{my:g}">',
        f'<title>{title}</title>',
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="white"/>',
    ]

    ox, oy = vp.to_px(0.0, 0.0)
    xe, _ = vp.to_px(vp.xmax, 0.0)
    _, ye = vp.to_px(0.0, vp.ymax)
    parts.append(
        f'<g stroke="black" stroke-width="1.5">'
        f'<line x1="{_fmt(ox)}" y1="{_fmt(oy)}" x2="{_fmt(xe)}" y2="{_fmt(oy)}"/>'
        f'<line x1="{_fmt(ox)}" y1="{_fmt(oy)}" x2="{_fmt(ox)}" y2="{_fmt(ye)}"/>'
        f"</g>"
    )
    for k in range(1, 6):
        tx = vp.xmin + (vp.xmax - vp.xmin) * k / 5.0
        ty = vp.ymin + (vp.ymax - vp.ymin) * k / 5.0
        pxx, pxy = vp.to_px(tx, 0.0)
        pyx, pyy = vp.to_px(0.0, ty)
        parts.append(
            f'<line x1="{_fmt(pxx)}" y1="{_fmt(pxy)}" x2="{_fmt(pxx)}" y2="{_fmt(pxy + 5)}" stroke="black"/>'
            f'<text x="{_fmt(pxx)}" y="{_fmt(pxy + 18)}" font-size="11" text-anchor="middle">{tx:.2f}</text>'
            f'<line x1="{_fmt(pyx - 5)}" y1="{_fmt(pyy)}" x2="{_fmt(pyx)}" y2="{_fmt(pyy)}" stroke="black"/>'
            f'<text x="{_fmt(pyx - 8)}" y="{_fmt(pyy + 4)}" font-size="11" text-anchor="end">{ty:.2f}</text>'
        )
    parts.append(
        f'<text x="{_fmt(_W / 2)}" y="{_fmt(_H - 6)}" font-size="13" text-anchor="middle">{axis_labels[0]}</text>'
        f'<text x="14" y="{_fmt(_H / 2)}" font-size="13" text-anchor="middle" '
        f'transform="rotate(-90 14 {_fmt(_H / 2)})">{axis_labels[1]}</text>'
        f'<text x="{_fmt(_W / 2)}" y="20" font-size="15" text-anchor="middle">{title}</text>'
    )

    if not region.empty and region.vertices:
        pts_px = " ".join(
            f"{_fmt(px)},{_fmt(py)}"
            for px, py in (vp.to_px(x, y) for x, y in region.vertices)
        )
        pts_data = " ".join(f"{x:.4f},{y:.4f}" for x, y in region.vertices)
        parts.append(
            f'<polygon points="{pts_px}" data-vertices="{pts_data}" '
            f'fill="#9ecae1" fill-opacity="0.45" stroke="#3182bd" stroke-width="1"/>'
        )

    for h in region.halfplanes:
        seg = _clip_line(h.a, h.b, h.rhs, vp)
        if seg is None:
            continue
        (x1, y1), (x2, y2) = seg
        p1, p2 = vp.to_px(x1, y1), vp.to_px(x2, y2)
        parts.append(
            f'<line x1="{_fmt(p1[0])}" y1="{_fmt(p1[1])}" x2="{_fmt(p2[0])}" '
            f'y2="{_fmt(p2[1])}" stroke="#636363" stroke-width="1">'
            f"<title>{h.label}</title></line>"
        )

    if prices is not None:
        px_, py_ = prices
        for cost in cost_values:
            seg = _clip_line(px_, py_, cost, vp)
            if seg is None:
                continue
            p1, p2 = vp.to_px(*seg[0]), vp.to_px(*seg[1])
            parts.append(
                f'<line x1="{_fmt(p1[0])}" y1="{_fmt(p1[1])}" x2="{_fmt(p2[0])}" '
                f'y2="{_fmt(p2[1])}" stroke="#e6550d" stroke-width="1.2" '
                f'stroke-dasharray="6 4"><title>cost = {cost:.2f}</title></line>'
            )

    if region.empty:
        parts.append(
            f'<text x="{_fmt(_W / 2)}" y="{_fmt(_H / 2)}" font-size="20" '
            f'text-anchor="middle" fill="#a50f15">infeasible</text>'
        )
    elif prices is not None and region.vertices:
        try:
            (vx, vy), cost = min_cost_vertex(region, prices)
        except GeometryError:
            vx = vy = cost = None
        if vx is not None:
            p = vp.to_px(vx, vy)
            parts.append(
                f'<circle cx="{_fmt(p[0])}" cy="{_fmt(p[1])}" r="5" fill="#e6550d" '
                f'data-x="{vx:.4f}" data-y="{vy:.4f}"/>'
                f'<text x="{_fmt(p[0] + 9)}" y="{_fmt(p[1] - 8)}" font-size="12">'
                f"({vx:.2f}, {vy:.2f}) cost {cost:.2f}</text>"
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
