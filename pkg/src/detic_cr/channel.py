"""High-SNR linear deterministic interference channel with a cognitive relay.

Each receiver sees the XOR of down-shifted copies of the three inputs::

    y1 = S^(m-n11) x1 + S^(m-n1c) xc + S^(m-n12) x2
    y2 = S^(m-n21) x1 + S^(m-n2c) xc + S^(m-n22) x2

with ``m`` the largest gain.  Parameter order is always
``n11, n12, n21, n22, n1c, n2c``.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from itertools import product
from typing import Iterator, NamedTuple

from .exceptions import ParameterError
from .gf2 import BitMatrix, BitVector, shift_matrix

GAIN_NAMES = ("n11", "n12", "n21", "n22", "n1c", "n2c")


@dataclass(frozen=True)
class ChannelParams:
    n11: int
    n12: int
    n21: int
    n22: int
    n1c: int
    n2c: int

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise ParameterError(f"{f.name} must be an integer, got {v!r}")
            if v < 0:
                raise ParameterError(f"{f.name} must be non-negative, got {v}")

    @property
    def m(self) -> int:
        return max(self.as_tuple())

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.n11, self.n12, self.n21, self.n22, self.n1c, self.n2c)

    def as_dict(self) -> dict[str, int]:
        return dict(zip(GAIN_NAMES, self.as_tuple()))

    def gain(self, rx: int, tx: str) -> int:
        """Gain from transmitter ``tx`` ('1', '2' or 'c') to receiver ``rx``."""
        return getattr(self, f"n{rx}{tx}")

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.as_tuple())


class ChannelOutput(NamedTuple):
    y1: BitVector
    y2: BitVector


def new_params(n11: int, n12: int, n21: int, n22: int, n1c: int, n2c: int) -> ChannelParams:
    return ChannelParams(n11, n12, n21, n22, n1c, n2c)


def parse_params(text: str) -> ChannelParams:
    """Parse ``"n11,n12,n21,n22,n1c,n2c"``."""
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 6:
        raise ParameterError(f"expected six comma-separated gains, got {text!r}")
    try:
        values = [int(s) for s in parts]
    except ValueError as exc:
        raise ParameterError(f"non-integer gain in {text!r}") from exc
    return ChannelParams(*values)


def swap_users(p: ChannelParams) -> ChannelParams:
    return ChannelParams(p.n22, p.n21, p.n12, p.n11, p.n2c, p.n1c)


def shifts(p: ChannelParams) -> dict[str, BitMatrix]:
    """The six shift matrices keyed by gain name."""
    m = p.m
    return {name: shift_matrix(m, v) for name, v in zip(GAIN_NAMES, p.as_tuple())}


def transmit(p: ChannelParams, x1: BitVector, xc: BitVector, x2: BitVector) -> ChannelOutput:
    m = p.m
    for name, x in (("x1", x1), ("xc", xc), ("x2", x2)):
        if x.len != m:
            raise ParameterError(f"{name} has length {x.len}, channel needs {m}")
    y1, y2 = transmit_bits(p, x1.bits, xc.bits, x2.bits)
    return ChannelOutput(BitVector(m, y1), BitVector(m, y2))


def transmit_bits(p: ChannelParams, x1: int, xc: int, x2: int) -> tuple[int, int]:
    """:func:`transmit` on packed ints, without length checks."""
    m = p.m
    mask = (1 << m) - 1
    # Component i moves to i + (m - n); the bottom m - n levels fall off.
    y1 = ((x1 << (m - p.n11)) ^ (xc << (m - p.n1c)) ^ (x2 << (m - p.n12))) & mask
    y2 = ((x1 << (m - p.n21)) ^ (xc << (m - p.n2c)) ^ (x2 << (m - p.n22))) & mask
    return y1, y2


def all_params(max_gain: int) -> Iterator[ChannelParams]:
    """Every tuple with gains in ``[0, max_gain]``, lexicographic in parameter order."""
    for t in product(range(max_gain + 1), repeat=6):
        yield ChannelParams(*t)
