"""Exhaustive search over single-use linear schemes on tiny channels.

User i's scheme is fixed by its stacked encoder ``E_i = [A_i; Ac_i]``
(``2m x k_i``).  Decodability depends on E_i only through its column space,
so the search runs over canonical forms, which are the k-dimensional
subspaces of GF(2)^(2m).  Encoders that are not injective at their own
receiver are dropped up front, since no partner can make them decodable.

Rate pairs are visited in order of increasing ``k1 + k2``.  A pair is tried
only when both of its lower neighbours are achievable, and its search stops
at the first decodable combination.  The achievable set therefore stays
downward closed, even when the time budget cuts the search short.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field
from itertools import combinations, product

from . import bounds, regions
from .channel import ChannelParams
from .exceptions import CapError, ParameterError
from .gf2 import BitMatrix, _rref, hstack, matmul, rank_of_rows, shift_matrix
from .schemes import LinearScheme, decode_check, scheme_to_dict

DEFAULT_MAX_M = 3
MAX_M_ENV = "DETIC_CR_MAX_M"


def max_m() -> int:
    """Oracle cap on m, overridable through ``DETIC_CR_MAX_M``."""
    raw = os.environ.get(MAX_M_ENV)
    if raw is None:
        return DEFAULT_MAX_M
    try:
        value = int(raw)
    except ValueError as exc:
        raise ParameterError(f"{MAX_M_ENV} must be an integer, got {raw!r}") from exc
    if value < 0:
        raise ParameterError(f"{MAX_M_ENV} must be non-negative")
    return value


def canonical_subspaces(n: int, k: int) -> list[tuple[int, ...]]:
    """All k-dimensional subspaces of GF(2)^n as canonical column tuples.

    Each tuple is the basis produced by :func:`gf2.stack_canonical_form`:
    column j has its lowest set bit at pivot ``p_j`` (increasing), and every
    column is zero at the other pivots.  Output is in lexicographic order.
    """
    out = []
    for pivots in combinations(range(n), k):
        pivot_set = set(pivots)
        free = [[b for b in range(p + 1, n) if b not in pivot_set] for p in pivots]
        for choice in product(*(range(1 << len(f)) for f in free)):
            cols = []
            for p, bits, mask in zip(pivots, free, choice):
                v = 1 << p
                for i, b in enumerate(bits):
                    if (mask >> i) & 1:
                        v |= 1 << b
                cols.append(v)
            out.append(tuple(cols))
    out.sort()
    return out


def all_encoders(n: int, k: int) -> list[tuple[int, ...]]:
    """Every ``n x k`` matrix as a column tuple, with no canonicalization."""
    return list(product(range(1 << n), repeat=k))


@dataclass(frozen=True)
class _Encoder:
    cols: tuple[int, ...]
    own: tuple[int, ...]  # image columns at the user's own receiver
    cross_key: tuple[int, ...]  # canonical basis of the image at the other receiver
    cross_rank: int


def _image(mat: BitMatrix, cols: tuple[int, ...], n: int) -> tuple[int, ...]:
    return tuple(matmul(mat, BitMatrix.from_columns(list(cols), n)).columns()) if cols else ()


def _prepare(cols_list, own_map: BitMatrix, cross_map: BitMatrix, n: int, k: int, filter_own: bool):
    out = []
    for cols in cols_list:
        own = _image(own_map, cols, n)
        if filter_own and rank_of_rows(own) < k:
            continue
        cross = _image(cross_map, cols, n)
        key, _ = _rref(cross)
        out.append(_Encoder(cols, own, tuple(key), len(key)))
    return out


@dataclass
class OracleResult:
    params: ChannelParams
    kmax: int
    achievable: frozenset
    witnesses: dict
    stats: dict = field(default_factory=dict)
    incomplete: bool = False

    def pareto(self) -> list[tuple[int, int]]:
        return sorted(pt for pt in self.achievable
                      if (pt[0] + 1, pt[1]) not in self.achievable and (pt[0], pt[1] + 1) not in self.achievable)

    def to_dict(self) -> dict:
        return {
            "achievable": [list(pt) for pt in sorted(self.achievable)],
            "incomplete": self.incomplete,
            "witnesses": {f"{k1},{k2}": scheme_to_dict(self.witnesses[(k1, k2)])
                          for k1, k2 in self.pareto() if (k1, k2) in self.witnesses},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _scheme_from(m: int, e1: tuple[int, ...], e2: tuple[int, ...]) -> LinearScheme:
    s1 = BitMatrix.from_columns(list(e1), 2 * m) if e1 else BitMatrix.zeros(2 * m, 0)
    s2 = BitMatrix.from_columns(list(e2), 2 * m) if e2 else BitMatrix.zeros(2 * m, 0)
    top = lambda s: BitMatrix(m, s.cols, s.data[:m])  # noqa: E731
    bottom = lambda s: BitMatrix(m, s.cols, s.data[m:])  # noqa: E731
    return LinearScheme(len(e1), len(e2), top(s1), top(s2), bottom(s1), bottom(s2), label="oracle witness")


def search_linear_schemes(p: ChannelParams, kmax: int = 2, budget: float | None = None,
                          canonical: bool = True) -> OracleResult:
    """Achievable integer rate pairs ``(k1, k2)``, ``k_i <= kmax``, by linear schemes.

    ``budget`` is a wall-clock limit in seconds; when it runs out the partial
    (still downward-closed) result is returned with ``incomplete=True``.
    ``canonical=False`` enumerates every encoder matrix instead of one per
    column space, without the injectivity prefilter; it exists to cross-check
    the canonical search.
    """
    m = p.m
    cap = max_m()
    if m > cap:
        raise CapError(f"oracle needs m <= {cap} (set {MAX_M_ENV} to raise it), got m = {m}")
    if isinstance(kmax, bool) or not isinstance(kmax, int) or kmax < 0:
        raise ParameterError(f"kmax must be a non-negative integer, got {kmax!r}")
    # A receiver sees at most m levels, so no rate above m is decodable.
    klim = min(kmax, m)
    start = time.monotonic()
    n = 2 * m
    S = lambda g: shift_matrix(m, g)  # noqa: E731
    maps1 = (hstack(S(p.n11), S(p.n1c)), hstack(S(p.n21), S(p.n2c)))
    maps2 = (hstack(S(p.n22), S(p.n2c)), hstack(S(p.n12), S(p.n1c)))

    enumerate_cols = canonical_subspaces if canonical else all_encoders
    pools: dict[tuple[int, int], list[_Encoder]] = {}

    def pool(user: int, k: int) -> list[_Encoder]:
        if (user, k) not in pools:
            own, cross = maps1 if user == 1 else maps2
            pools[(user, k)] = _prepare(enumerate_cols(n, k), own, cross, n, k, canonical)
        return pools[(user, k)]

    achievable = {(0, 0)}
    witnesses = {(0, 0): _scheme_from(m, (), ())}
    checked = 0
    incomplete = False
    ok_cache: dict = {}

    def decodes(e: _Encoder, k: int, other_key: tuple[int, ...], other_rank: int) -> bool:
        key = (id(e), other_key)
        if key not in ok_cache:
            ok_cache[key] = rank_of_rows(e.own + other_key) == k + other_rank
        return ok_cache[key]

    for total in range(1, 2 * klim + 1):
        for k1 in range(max(0, total - klim), min(klim, total) + 1):
            k2 = total - k1
            if (k1 > 0 and (k1 - 1, k2) not in achievable) or (k2 > 0 and (k1, k2 - 1) not in achievable):
                continue
            if budget is not None and time.monotonic() - start > budget:
                incomplete = True
                break
            found = None
            for e1, e2 in product(pool(1, k1), pool(2, k2)):
                checked += 1
                if checked % 4096 == 0 and budget is not None and time.monotonic() - start > budget:
                    incomplete = True
                    break
                if decodes(e1, k1, e2.cross_key, e2.cross_rank) and decodes(e2, k2, e1.cross_key, e1.cross_rank):
                    found = (e1.cols, e2.cols)
                    break
            if incomplete:
                break
            if found is not None:
                achievable.add((k1, k2))
                witnesses[(k1, k2)] = _scheme_from(m, *found)
        if incomplete:
            break
    stats = {
        "schemes_checked": checked,
        "encoder_classes": {f"user{u}_k{k}": len(v) for (u, k), v in sorted(pools.items())},
        "elapsed": time.monotonic() - start,
    }
    return OracleResult(p, kmax, frozenset(achievable), witnesses, stats, incomplete)


def verify_witnesses(result: OracleResult) -> bool:
    return all(decode_check(result.params, s).decodable and s.rates == pt for pt, s in result.witnesses.items())


def is_downward_closed(points) -> bool:
    pts = set(points)
    return all((a - 1, b) in pts for a, b in pts if a > 0) and all((a, b - 1) in pts for a, b in pts if b > 0)


@dataclass(frozen=True)
class GapReport:
    achieved: tuple[tuple[int, int], ...]
    missing: tuple[tuple[int, int], ...]
    corners: tuple[tuple[int, int], ...]
    corners_missed: tuple[tuple[int, int], ...]
    violations: tuple[tuple[int, int], ...]
    incomplete: bool

    @property
    def sound(self) -> bool:
        return not self.violations

    @property
    def gap_empty(self) -> bool:
        return not self.missing and self.sound

    @property
    def corners_hit(self) -> bool:
        return not self.corners_missed

    def to_dict(self) -> dict:
        return {
            "achieved": [list(x) for x in self.achieved],
            "missing": [list(x) for x in self.missing],
            "corners": [list(x) for x in self.corners],
            "corners_missed": [list(x) for x in self.corners_missed],
            "soundness_violations": [list(x) for x in self.violations],
            "incomplete": self.incomplete,
        }

    def lines(self) -> list[str]:
        out = [f"achieved integer points: {len(self.achieved)}",
               f"missing integer points: {' '.join(map(str, self.missing)) or 'none'}",
               f"integer corners missed: {' '.join(map(str, self.corners_missed)) or 'none'}"]
        if self.violations:
            out.append(f"SOUNDNESS VIOLATION: achieved outside region: {' '.join(map(str, self.violations))}")
        if self.incomplete:
            out.append("search incomplete (budget exhausted)")
        return out


def compare_to_bound(result: OracleResult, region: regions.RateRegion) -> GapReport:
    """Which integer points of ``region`` the oracle reaches, and any outside it."""
    pts = regions.integer_points(region)
    ach = result.achievable
    corners = regions.integer_vertices(region)
    return GapReport(
        tuple(pt for pt in pts if pt in ach),
        tuple(pt for pt in pts if pt not in ach),
        tuple(corners),
        tuple(c for c in corners if c not in ach),
        tuple(sorted(pt for pt in ach if not regions.contains(region, pt))),
        result.incomplete,
    )


def capacity_known(p: ChannelParams) -> regions.RateRegion | None:
    """Capacity region where a closed form is proved with linear schemes, else None."""
    regs = bounds.capacity_regions(p)
    return next(iter(regs.values()), None)
