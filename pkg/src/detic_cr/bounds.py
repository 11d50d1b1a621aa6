"""Outer-bound and capacity regions of the high-SNR channel.

Two independent routes produce the outer bound:

* :func:`outer_bound_closed` substitutes the gains into the seven
  closed-form bounds;
* :func:`outer_bound_rank` evaluates the underlying entropy expressions by
  GF(2) rank calculus, never touching the closed form.

Bound labels:

=============  ===========  =============================================
shape          closed form  rank calculus
=============  ===========  =============================================
R1             r1           r1: H(Y1|X2)
R2             r2           r2: H(Y2|X1)
R1+R2          sum_align1   sum_y2: H(Y2) + H(Y1|Y2,X2)
R1+R2          sum_align2   sum_y1: H(Y1) + H(Y2|Y1,X1)
R1+R2          sum_v        sum_v: interference-genie sum rate
2R1+R2         2r1_r2       2r1_r2
R1+2R2         r1_2r2       r1_2r2
=============  ===========  =============================================

The closed-form ``sum_align1`` switches on ``n11-n1c == n21-n2c``.  Its
aligned branch is that of ``sum_y2`` and its generic branch is that of
``sum_y1`` (``sum_align2`` mirrors it), so the two R1+R2 pairs agree only
as a minimum.  Agreement is checked per shape on the tightest bound, and as
polygons.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .channel import ChannelParams, swap_users
from .entropy import _Evaluator
from .exceptions import RegimeError
from .regions import Inequality, RateRegion, from_inequalities, mirror, rectangle

R1, R2, SUM, TWO_R1, TWO_R2 = (1, 0), (0, 1), (1, 1), (2, 1), (1, 2)

CLOSED_SHAPES = {"r1": R1, "r2": R2, "sum_align1": SUM, "sum_align2": SUM, "sum_v": SUM, "2r1_r2": TWO_R1, "r1_2r2": TWO_R2}
RANK_SHAPES = {"r1": R1, "r2": R2, "sum_y2": SUM, "sum_y1": SUM, "sum_v": SUM, "2r1_r2": TWO_R1, "r1_2r2": TWO_R2}
THM1_LABELS = ("r1", "r2", "sum_y2", "sum_y1")
SHARED_LABELS = ("r1", "r2", "sum_v", "2r1_r2", "r1_2r2")


def pos(x: int) -> int:
    return x if x > 0 else 0


# -- closed form -------------------------------------------------------


def closed_form_values(p: ChannelParams) -> dict[str, int]:
    n11, n12, n21, n22, n1c, n2c = p.as_tuple()
    if n11 - n1c != n21 - n2c:
        c = pos(n11 - max(n12, n1c)) + max(n22 + n1c, n2c + n12)
    else:
        c = max(n22, n21, n2c) + pos(n11 - n21)
    if n22 - n2c != n12 - n1c:
        d = pos(n22 - max(n21, n2c)) + max(n11 + n2c, n1c + n21)
    else:
        d = max(n11, n12, n1c) + pos(n22 - n12)
    e = max(n11 - n21, n12, n1c) + min(n1c, n12) + max(n22 - n12, n21, n2c) + min(n2c, n21)
    return {
        "r1": max(n11, n1c),
        "r2": max(n22, n2c),
        "sum_align1": c,
        "sum_align2": d,
        "sum_v": e,
        "2r1_r2": max(n11, n12, n1c) + e,
        "r1_2r2": max(n22, n21, n2c) + e,
    }


def _region(values: dict[str, int], shapes: dict[str, tuple[int, int]]) -> RateRegion:
    return from_inequalities(Inequality(*shapes[k], v) for k, v in values.items())


def outer_bound_closed(p: ChannelParams) -> RateRegion:
    return _region(closed_form_values(p), CLOSED_SHAPES)


# -- rank calculus -------------------------------------------------------


@dataclass
class RankTerms:
    """Individual entropy terms behind each rank-route bound."""

    values: dict[str, int]
    terms: dict[str, dict[str, int]] = field(default_factory=dict)


def rank_terms(p: ChannelParams) -> RankTerms:
    ev = _Evaluator(p)
    H, Hc, I = ev.H, ev.Hc, ev.I_min
    t: dict[str, dict[str, int]] = {}
    t["r1"] = {"H(Y1|X2)": Hc(("Y1",), ("X2",))}
    t["r2"] = {"H(Y2|X1)": Hc(("Y2",), ("X1",))}
    t["sum_y2"] = {"H(Y2)": H("Y2"), "H(Y1|Y2,X2)": Hc(("Y1",), ("Y2", "X2"))}
    t["sum_y1"] = {"H(Y1)": H("Y1"), "H(Y2|Y1,X1)": Hc(("Y2",), ("Y1", "X1"))}
    # Genie copies set equal to the interference they copy.
    y1_v21 = Hc(("Y1",), ("V21",))
    y2_v12 = Hc(("Y2",), ("V12",))
    i21 = I("V21", "V2c")
    i12 = I("V12", "V1c")
    v21_x1 = -Hc(("V21",), ("X1",))
    v12_x2 = -Hc(("V12",), ("X2",))
    common = {
        "H(Y1|V21)": y1_v21,
        "H(Y2|V12)": y2_v12,
        "I(V21;V2c)": i21,
        "I(V12;V1c)": i12,
    }
    t["sum_v"] = {**common, "-H(V21|X1)": v21_x1, "-H(V12|X2)": v12_x2}
    t["2r1_r2"] = {"H(Y1)": H("Y1"), **common, "-H(V21|X1)": v21_x1, "-2H(V12|X2)": 2 * v12_x2}
    t["r1_2r2"] = {"H(Y2)": H("Y2"), **common, "-H(V12|X2)": v12_x2, "-2H(V21|X1)": 2 * v21_x1}
    return RankTerms({k: sum(v.values()) for k, v in t.items()}, t)


def rank_values(p: ChannelParams) -> dict[str, int]:
    return rank_terms(p).values


def outer_bound_rank(p: ChannelParams) -> RateRegion:
    return _region(rank_values(p), RANK_SHAPES)


def deterministic_thm1(p: ChannelParams) -> RateRegion:
    vals = rank_values(p)
    return _region({k: vals[k] for k in THM1_LABELS}, RANK_SHAPES)


def tightest_per_shape(values: dict[str, int], shapes: dict[str, tuple[int, int]]) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    for k, v in values.items():
        s = shapes[k]
        out[s] = min(v, out.get(s, v))
    return out


@dataclass
class BoundComparison:
    params: ChannelParams
    closed: dict[str, int]
    rank: dict[str, int]
    closed_per_shape: dict[tuple[int, int], int]
    rank_per_shape: dict[tuple[int, int], int]
    regions_equal: bool

    @property
    def ok(self) -> bool:
        return self.regions_equal and self.closed_per_shape == self.rank_per_shape


def compare_routes(p: ChannelParams) -> BoundComparison:
    closed = closed_form_values(p)
    rank = rank_values(p)
    return BoundComparison(
        p,
        closed,
        rank,
        tightest_per_shape(closed, CLOSED_SHAPES),
        tightest_per_shape(rank, RANK_SHAPES),
        _region(closed, CLOSED_SHAPES).vertices == _region(rank, RANK_SHAPES).vertices,
    )


def degenerate_branch_gap(p: ChannelParams) -> dict[str, int | None]:
    """Aligned minus generic branch of each closed-form sum bound where its alignment holds."""
    n11, n12, n21, n22, n1c, n2c = p.as_tuple()
    out: dict[str, int | None] = {"sum_align1": None, "sum_align2": None}
    if n11 - n1c == n21 - n2c:
        gen = pos(n11 - max(n12, n1c)) + max(n22 + n1c, n2c + n12)
        out["sum_align1"] = max(n22, n21, n2c) + pos(n11 - n21) - gen
    if n22 - n2c == n12 - n1c:
        gen = pos(n22 - max(n21, n2c)) + max(n11 + n2c, n1c + n21)
        out["sum_align2"] = max(n11, n12, n1c) + pos(n22 - n12) - gen
    return out


# -- capacity results ------------------------------------------------------


def in_mixed_regime(p: ChannelParams) -> bool:
    return p.n11 > p.n1c > p.n12 and p.n22 > p.n2c > p.n21


def _relation(name_a: str, a: int, name_b: str, b: int) -> str:
    return f"{name_a} {'<' if a < b else '='} {name_b}"


def mixed_regime_violation(p: ChannelParams) -> str | None:
    """Name the first violated mixed-regime condition, or None."""
    chain = [("n11", p.n11, "n1c", p.n1c), ("n1c", p.n1c, "n12", p.n12),
             ("n22", p.n22, "n2c", p.n2c), ("n2c", p.n2c, "n21", p.n21)]
    for na, a, nb, b in chain:
        if not a > b:
            return _relation(na, a, nb, b)
    return None


def capacity_mixed_regime(p: ChannelParams) -> RateRegion | None:
    """Rectangle [0, n11] x [0, n22] in the strong-signal, mixed-cognition, weak-interference regime."""
    if not in_mixed_regime(p):
        return None
    return rectangle(p.n11, p.n22)


# Sub-cases of the channel without cross links (n12 = n21 = 0).
DEGENERATE_BROADCAST = "degenerate-broadcast"  # n11 = n22 = 0, n1c = n2c
ALIGNED_1 = "aligned-user1"  # n11 = n1c - n2c only
ALIGNED_2 = "aligned-user2"  # n22 = n2c - n1c only
WEAK_WEAK = "weak-weak"  # n11 >= n1c, n22 >= n2c
STRONG_STRONG = "strong-strong"  # n11 < n1c, n22 < n2c
WEAK_STRONG = "weak-strong"  # n11 >= n1c, n22 < n2c
STRONG_WEAK = "strong-weak"  # n11 < n1c, n22 >= n2c


def no_interference_case(p: ChannelParams) -> str:
    """Classify a cross-link-free channel; the two alignment tests take precedence."""
    if p.n12 or p.n21:
        raise RegimeError("cross links present: need n12 = n21 = 0")
    deg1 = p.n11 == p.n1c - p.n2c
    deg2 = p.n22 == p.n2c - p.n1c
    if deg1 and deg2:
        return DEGENERATE_BROADCAST
    if deg1:
        return ALIGNED_1
    if deg2:
        return ALIGNED_2
    weak1, weak2 = p.n11 >= p.n1c, p.n22 >= p.n2c
    if weak1 and weak2:
        return WEAK_WEAK
    if not weak1 and not weak2:
        return STRONG_STRONG
    return WEAK_STRONG if weak1 else STRONG_WEAK


def no_interference_bounds(p: ChannelParams) -> dict[str, int]:
    """The four remaining bounds once the weighted sum rates are dropped."""
    n11, n22, n1c, n2c = p.n11, p.n22, p.n1c, p.n2c
    if n11 != n1c - n2c:
        c = pos(n11 - n1c) + max(n22 + n1c, n2c)
    else:
        c = max(n22, n2c) + n11
    if n22 != n2c - n1c:
        d = pos(n22 - n2c) + max(n11 + n2c, n1c)
    else:
        d = max(n11, n1c) + n22
    return {"r1": max(n11, n1c), "r2": max(n22, n2c), "sum_align1": c, "sum_align2": d}


def no_interference_values(p: ChannelParams) -> dict[str, int]:
    """All seven closed-form bounds at n12 = n21 = 0."""
    if p.n12 or p.n21:
        raise RegimeError("cross links present: need n12 = n21 = 0")
    return closed_form_values(p)


def capacity_no_interference(p: ChannelParams) -> RateRegion | None:
    """Capacity region when n12 = n21 = 0; None otherwise."""
    if p.n12 or p.n21:
        return None
    case = no_interference_case(p)
    if case == DEGENERATE_BROADCAST:
        nc = p.n1c
        return from_inequalities([Inequality(1, 0, nc), Inequality(0, 1, nc), Inequality(1, 1, nc)])
    if case == ALIGNED_1:
        return from_inequalities([
            Inequality(1, 0, p.n1c),
            Inequality(0, 1, max(p.n22, p.n2c)),
            Inequality(1, 1, p.n1c + pos(p.n22 - p.n2c)),
        ])
    if case == ALIGNED_2:
        return mirror(capacity_no_interference(swap_users(p)))
    return _region(no_interference_bounds(p), CLOSED_SHAPES)


@dataclass
class RedundancyReport:
    values: dict[str, int]
    weighted1_redundant: bool  # 2R1+R2 bound == R1 bound + sum_v bound
    weighted2_redundant: bool  # R1+2R2 bound == R2 bound + sum_v bound

    @property
    def ok(self) -> bool:
        return self.weighted1_redundant and self.weighted2_redundant


def redundancy_identities(p: ChannelParams) -> RedundancyReport:
    """Check that both weighted sum-rate bounds are sums of two other bounds."""
    v = no_interference_values(p)
    return RedundancyReport(
        v,
        v["2r1_r2"] == v["r1"] + v["sum_v"],
        v["r1_2r2"] == v["r2"] + v["sum_v"],
    )


def applicable_regimes(p: ChannelParams) -> list[str]:
    out = []
    if in_mixed_regime(p):
        out.append("strong signal, mixed cognition, weak interference")
    if p.n12 == 0 and p.n21 == 0:
        out.append(f"no interfering links ({no_interference_case(p)})")
    return out


def capacity_regions(p: ChannelParams) -> dict[str, RateRegion]:
    out = {}
    r = capacity_mixed_regime(p)
    if r is not None:
        out["mixed-regime"] = r
    r = capacity_no_interference(p)
    if r is not None:
        out["no-interference"] = r
    return out
