"""Exact two-user rate regions as intersections of half-planes.

A region is ``{(R1, R2) >= 0 : a*R1 + b*R2 <= c for every inequality}``,
closed, with integer ``c`` and ``(a, b)`` one of the five shapes that
appear in the bounds: R1, R2, R1+R2, 2R1+R2, R1+2R2.  Vertices are exact
``Fraction`` pairs; with these shapes every pairwise determinant lies in
{1, 2, 3}, so no vertex denominator exceeds 3.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from typing import Iterable, Sequence

from .exceptions import RegionError

SHAPES: tuple[tuple[int, int], ...] = ((1, 0), (0, 1), (1, 1), (2, 1), (1, 2))
SHAPE_NAMES = {(1, 0): "R1", (0, 1): "R2", (1, 1): "R1+R2", (2, 1): "2R1+R2", (1, 2): "R1+2R2"}

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True, order=True)
class Inequality:
    """``a*R1 + b*R2 <= c``."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if (self.a, self.b) not in SHAPES:
            raise RegionError(f"unsupported inequality shape ({self.a}, {self.b})")
        if isinstance(self.c, bool) or not isinstance(self.c, int) or self.c < 0:
            raise RegionError(f"bound must be a non-negative integer, got {self.c!r}")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.a, self.b)

    def holds(self, pt: Point) -> bool:
        return self.a * pt[0] + self.b * pt[1] <= self.c

    def mirrored(self) -> "Inequality":
        return Inequality(self.b, self.a, self.c)

    def __str__(self) -> str:
        return f"{SHAPE_NAMES[self.shape]} <= {self.c}"


def _shape_key(ineq: Inequality) -> tuple[int, int]:
    return (SHAPES.index(ineq.shape), ineq.c)


def _bounded(ineqs: Sequence[Inequality]) -> bool:
    return any(q.a > 0 for q in ineqs) and any(q.b > 0 for q in ineqs)


def _feasible(ineqs: Sequence[Inequality], pt: Point) -> bool:
    return pt[0] >= 0 and pt[1] >= 0 and all(q.holds(pt) for q in ineqs)


def _ccw(p: Point, q: Point) -> int:
    cross = p[0] * q[1] - p[1] * q[0]
    if cross > 0:
        return -1
    if cross < 0:
        return 1
    dp, dq = p[0] + p[1], q[0] + q[1]
    return (dp > dq) - (dp < dq)


def _compute_vertices(ineqs: Sequence[Inequality]) -> tuple[Point, ...]:
    # Candidate points are kept as integer triples (x*d, y*d, d), d > 0.
    lines = [(q.a, q.b, q.c) for q in ineqs] + [(1, 0, 0), (0, 1, 0)]
    found: set[Point] = set()
    for (a1, b1, c1), (a2, b2, c2) in combinations(lines, 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        nx, ny = c1 * b2 - c2 * b1, a1 * c2 - a2 * c1
        if det < 0:
            det, nx, ny = -det, -nx, -ny
        if nx < 0 or ny < 0:
            continue
        if all(a * nx + b * ny <= c * det for a, b, c in lines[:-2]):
            found.add((Fraction(nx, det), Fraction(ny, det)))
    origin = (Fraction(0), Fraction(0))
    rest = sorted((p for p in found if p != origin), key=cmp_to_key(_ccw))
    pts = [origin] + rest
    # Drop points strictly inside an edge (several lines through one boundary point).
    if len(pts) > 2:
        n = len(pts)
        keep = []
        for i, cur in enumerate(pts):
            prv, nxt = pts[i - 1], pts[(i + 1) % n]
            cross = (cur[0] - prv[0]) * (nxt[1] - cur[1]) - (cur[1] - prv[1]) * (nxt[0] - cur[0])
            if cross != 0 or cur == origin:
                keep.append(cur)
        pts = keep
    for x, y in pts:
        if x.denominator > 3 or y.denominator > 3:
            raise AssertionError(f"vertex denominator above 3: {(x, y)}")
    return tuple(pts)


@dataclass(frozen=True)
class RateRegion:
    """Canonical region: minimal sorted inequalities plus CCW vertices from (0, 0)."""

    inequalities: tuple[Inequality, ...]
    vertices: tuple[Point, ...]

    def contains(self, pt: Sequence) -> bool:
        return contains(self, pt)

    def __str__(self) -> str:
        ineq = ", ".join(str(q) for q in self.inequalities)
        verts = " ".join(f"({fmt_fraction(x)},{fmt_fraction(y)})" for x, y in self.vertices)
        return f"{{{ineq}}} vertices {verts}"


def from_inequalities(ineqs: Iterable[Inequality | tuple[int, int, int]]) -> RateRegion:
    """Canonical region for a bounded set of inequalities.

    Same-shape duplicates keep their tightest bound; inequalities whose
    removal leaves the region unchanged are dropped, sum-rate shapes first.
    """
    items = [q if isinstance(q, Inequality) else Inequality(*q) for q in ineqs]
    if not _bounded(items):
        raise RegionError("unbounded region: need one inequality involving R1 and one involving R2")
    tight: dict[tuple[int, int], Inequality] = {}
    for q in items:
        if q.shape not in tight or q.c < tight[q.shape].c:
            tight[q.shape] = q
    kept = sorted(tight.values(), key=_shape_key)
    verts = _compute_vertices(kept)
    if len(verts) >= 3:
        # Full-dimensional: the facets are exactly the lines carrying an edge.
        kept = [q for q in kept if sum(q.a * x + q.b * y == q.c for x, y in verts) >= 2]
    else:
        for q in sorted(kept, key=_shape_key, reverse=True):
            trial = [r for r in kept if r != q]
            if _bounded(trial) and _compute_vertices(trial) == verts:
                kept = trial
    return RateRegion(tuple(kept), verts)


def vertices(region: RateRegion) -> list[Point]:
    return list(region.vertices)


def _as_point(pt: Sequence) -> Point:
    return (Fraction(pt[0]), Fraction(pt[1]))


def contains(region: RateRegion, pt: Sequence) -> bool:
    return _feasible(region.inequalities, _as_point(pt))


def equals(a: RateRegion, b: RateRegion) -> bool:
    return a.vertices == b.vertices


def is_subset(a: RateRegion, b: RateRegion) -> bool:
    return all(contains(b, v) for v in a.vertices)


def mirror(region: RateRegion) -> RateRegion:
    return from_inequalities(q.mirrored() for q in region.inequalities)


def rectangle(r1: int, r2: int) -> RateRegion:
    return from_inequalities([Inequality(1, 0, r1), Inequality(0, 1, r2)])


def integer_points(region: RateRegion) -> list[tuple[int, int]]:
    xmax = max(v[0] for v in region.vertices)
    ymax = max(v[1] for v in region.vertices)
    return [
        (x, y)
        for x in range(int(xmax) + 1)
        for y in range(int(ymax) + 1)
        if contains(region, (x, y))
    ]


def integer_vertices(region: RateRegion) -> list[tuple[int, int]]:
    return [(int(x), int(y)) for x, y in region.vertices if x.denominator == 1 and y.denominator == 1]


def witness_outside(a: RateRegion, b: RateRegion) -> Point | None:
    """A vertex of ``a`` that ``b`` does not contain, if any."""
    for v in a.vertices:
        if not contains(b, v):
            return v
    return None


# -- serialization ------------------------------------------------------


def fmt_fraction(x: Fraction) -> str:
    return str(x)


def to_dict(region: RateRegion, params: dict | None = None) -> dict:
    return {
        "params": dict(params or {}),
        "inequalities": [{"a": q.a, "b": q.b, "c": q.c} for q in region.inequalities],
        "vertices": [[fmt_fraction(x), fmt_fraction(y)] for x, y in region.vertices],
    }


def from_dict(data: dict) -> RateRegion:
    try:
        ineqs = [Inequality(int(d["a"]), int(d["b"]), int(d["c"])) for d in data["inequalities"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise RegionError(f"malformed region JSON: {exc}") from exc
    region = from_inequalities(ineqs)
    if "vertices" in data:
        try:
            given = tuple((Fraction(x), Fraction(y)) for x, y in data["vertices"])
        except (TypeError, ValueError) as exc:
            raise RegionError(f"malformed vertex list: {exc}") from exc
        if given != region.vertices:
            raise RegionError("vertex list does not match the inequalities")
    return region


def dumps(region: RateRegion, params: dict | None = None) -> str:
    return json.dumps(to_dict(region, params), indent=2) + "\n"


def loads(text: str) -> RateRegion:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RegionError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise RegionError("region JSON must be an object")
    return from_dict(data)
