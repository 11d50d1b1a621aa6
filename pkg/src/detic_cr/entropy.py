"""Entropies of linear observables of independent uniform channel inputs.

Every quantity is a GF(2) linear image of the stacked input
``u = (x1; xc; x2)``.  With the three inputs iid uniform, a linear image is
uniform on its column space, so its entropy in bits is the rank of its map.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .channel import ChannelParams
from .exceptions import ParameterError
from .gf2 import BitMatrix, hstack, rank, shift_matrix, vstack

LABELS = ("X1", "X2", "Xc", "Y1", "Y2", "V12", "V21", "V1c", "V2c")


@dataclass(frozen=True)
class LinearObservable:
    label: str
    params: ChannelParams
    map: BitMatrix


def _blocks(p: ChannelParams, b1: BitMatrix | None, bc: BitMatrix | None, b2: BitMatrix | None) -> BitMatrix:
    m = p.m
    zero = BitMatrix.zeros(m, m)
    return hstack(b1 or zero, bc or zero, b2 or zero)


def _single(p: ChannelParams, label: str) -> BitMatrix:
    m = p.m
    S = lambda n: shift_matrix(m, n)  # noqa: E731
    eye = BitMatrix.identity(m)
    table = {
        "X1": (eye, None, None),
        "Xc": (None, eye, None),
        "X2": (None, None, eye),
        "Y1": (S(p.n11), S(p.n1c), S(p.n12)),
        "Y2": (S(p.n21), S(p.n2c), S(p.n22)),
        "V12": (None, None, S(p.n12)),
        "V21": (S(p.n21), None, None),
        "V1c": (None, S(p.n1c), None),
        "V2c": (None, S(p.n2c), None),
    }
    if label not in table:
        raise ParameterError(f"unknown observable label {label!r}; expected one of {', '.join(LABELS)}")
    return _blocks(p, *table[label])


def observable(p: ChannelParams, label: str) -> LinearObservable:
    """Observable for a label such as ``"Y1"`` or a composite ``"Y1,X2"``."""
    parts = [s.strip() for s in label.split(",") if s.strip()]
    if not parts:
        raise ParameterError("empty observable label")
    mats = [_single(p, s) for s in parts]
    return LinearObservable(",".join(parts), p, vstack(*mats))


def joint(*obs: LinearObservable) -> LinearObservable:
    if not obs:
        raise ParameterError("joint of nothing")
    _check_same(*obs)
    return LinearObservable(",".join(o.label for o in obs), obs[0].params, vstack(*(o.map for o in obs)))


def _check_same(*obs: LinearObservable) -> None:
    p = obs[0].params
    if any(o.params != p for o in obs[1:]):
        raise ParameterError("observables belong to different channel parameters")


def entropy(obs: LinearObservable) -> int:
    return rank(obs.map)


def cond_entropy(a: LinearObservable, given: LinearObservable) -> int:
    """H(a | given) = rank([a; given]) - rank(given)."""
    _check_same(a, given)
    return rank(vstack(a.map, given.map)) - rank(given.map)


def mi_min_bound(a: LinearObservable, b: LinearObservable) -> int:
    """Upper bound min{H(a), H(b)} on I(a; b)."""
    _check_same(a, b)
    return min(entropy(a), entropy(b))


class _Evaluator:
    """Memoised H-terms for one parameter tuple."""

    def __init__(self, p: ChannelParams):
        self.p = p
        self._maps = {label: _single(p, label) for label in LABELS}
        self._ranks: dict[tuple[str, ...], int] = {}

    def H(self, *labels: str) -> int:
        key = tuple(sorted(set(labels)))
        if key not in self._ranks:
            self._ranks[key] = rank(vstack(*(self._maps[s] for s in key))) if key else 0
        return self._ranks[key]

    def Hc(self, a: tuple[str, ...], given: tuple[str, ...]) -> int:
        return self.H(*a, *given) - self.H(*given)

    def I_min(self, a: str, b: str) -> int:
        return min(self.H(a), self.H(b))


_TERM = re.compile(r"^\s*(H|I)\s*\(\s*([^|;)]*?)\s*(?:([|;])\s*([^)]*?))?\s*\)\s*$")


def evaluate_term(p: ChannelParams, term: str) -> int:
    """Evaluate ``H(A)``, ``H(A|B)`` or ``I(A;B)`` (min-entropy bound).

    ``A`` and ``B`` are labels or comma-joined composites, e.g.
    ``H(Y1|Y2,X2)``.
    """
    match = _TERM.match(term)
    if not match:
        raise ParameterError(f"cannot parse term {term!r}")
    kind, left, sep, right = match.groups()
    a = observable(p, left)
    if kind == "H":
        if sep is None:
            return entropy(a)
        if sep != "|":
            raise ParameterError(f"H-term needs '|' for conditioning: {term!r}")
        return cond_entropy(a, observable(p, right))
    if sep != ";":
        raise ParameterError(f"I-term needs 'A;B': {term!r}")
    return mi_min_bound(a, observable(p, right))
