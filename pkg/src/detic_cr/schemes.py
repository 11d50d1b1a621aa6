"""Single-use linear coding schemes, their decodability check, and verifiers.

A scheme encodes ``x1 = A1 b1``, ``x2 = A2 b2`` and ``xc = Ac1 b1 + Ac2 b2``.
Receiver 1 sees ``y1 = M11 b1 + M12 b2`` with::

    M11 = S^(m-n11) A1 + S^(m-n1c) Ac1
    M12 = S^(m-n12) A2 + S^(m-n1c) Ac2

and decodes b1 for every b2 iff ``rank([M11 M12]) == k1 + rank(M12)``
(``M11`` injective and its column space meeting that of ``M12`` only in 0).

Constructors place message bits by receiver *height*: component ``i``
(0-based) of an input arriving over a gain-``n`` link sits ``n - i`` levels
above the bottom of the receiver (visible iff ``i < n``).
"""

from __future__ import annotations

import json
import random
from collections.abc import Iterator
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from . import bounds
from .channel import ChannelParams, swap_users, transmit, transmit_bits
from .exceptions import CapError, ParameterError, RegimeError
from .gf2 import BitMatrix, BitVector, LinearSolver, hstack, matmul, nullspace, rank, shift_matrix

DEFAULT_BRUTE_FORCE_CAP = 12


def _combine(columns: list[int], bits: int) -> int:
    """XOR of the columns selected by ``bits``."""
    acc = 0
    j = 0
    while bits:
        if bits & 1:
            acc ^= columns[j]
        bits >>= 1
        j += 1
    return acc


@dataclass(frozen=True)
class LinearScheme:
    k1: int
    k2: int
    A1: BitMatrix
    A2: BitMatrix
    Ac1: BitMatrix
    Ac2: BitMatrix
    label: str = field(default="", compare=False)
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        m = self.A1.rows
        for name, mat, k in (("A1", self.A1, self.k1), ("A2", self.A2, self.k2),
                             ("Ac1", self.Ac1, self.k1), ("Ac2", self.Ac2, self.k2)):
            if mat.rows != m:
                raise ParameterError(f"{name} has {mat.rows} rows, expected {m}")
            if mat.cols != k:
                raise ParameterError(f"{name} has {mat.cols} columns, expected {k}")

    @property
    def m(self) -> int:
        return self.A1.rows

    @property
    def rates(self) -> tuple[int, int]:
        return (self.k1, self.k2)

    @cached_property
    def _columns(self) -> tuple[list[int], ...]:
        return tuple(mat.columns() for mat in (self.A1, self.A2, self.Ac1, self.Ac2))

    def encode_bits(self, b1: int, b2: int) -> tuple[int, int, int]:
        """:meth:`encode` on packed ints, without length checks."""
        a1, a2, ac1, ac2 = self._columns
        return _combine(a1, b1), _combine(ac1, b1) ^ _combine(ac2, b2), _combine(a2, b2)

    def encode(self, b1: BitVector, b2: BitVector) -> tuple[BitVector, BitVector, BitVector]:
        """Channel inputs ``(x1, xc, x2)`` for a message pair."""
        if b1.len != self.k1 or b2.len != self.k2:
            raise ParameterError(f"messages must have lengths ({self.k1}, {self.k2})")
        x1, xc, x2 = self.encode_bits(b1.bits, b2.bits)
        m = self.m
        return BitVector(m, x1), BitVector(m, xc), BitVector(m, x2)

    def with_notes(self, *notes: str, label: str | None = None) -> "LinearScheme":
        return LinearScheme(self.k1, self.k2, self.A1, self.A2, self.Ac1, self.Ac2,
                            self.label if label is None else label, self.notes + tuple(notes))


def empty_scheme(m: int) -> LinearScheme:
    z = BitMatrix.zeros(m, 0)
    return LinearScheme(0, 0, z, z, z, z, label="empty")


def random_scheme(m: int, k1: int, k2: int, rng: random.Random) -> LinearScheme:
    """Scheme with independent uniform encoder matrices."""
    def mat(k):
        return BitMatrix(m, k, tuple(rng.getrandbits(k) if k else 0 for _ in range(m)))
    return LinearScheme(k1, k2, mat(k1), mat(k2), mat(k1), mat(k2), label="random")


def swap_scheme(s: LinearScheme) -> LinearScheme:
    """The same scheme with the users' roles exchanged (pairs with ``swap_users``)."""
    return LinearScheme(s.k2, s.k1, s.A2, s.A1, s.Ac2, s.Ac1, s.label, s.notes)


def _placement(m: int, k: int, pairs: list[tuple[int, int]]) -> BitMatrix:
    """m x k matrix with a one at each (component, message bit) pair."""
    data = [0] * m
    for row, col in pairs:
        if not (0 <= row < m and 0 <= col < k):
            raise AssertionError(f"placement ({row}, {col}) outside {m}x{k}")
        data[row] |= 1 << col
    return BitMatrix(m, k, tuple(data))


# -- serialization ------------------------------------------------------------


def scheme_to_dict(s: LinearScheme) -> dict:
    return {
        "k1": s.k1,
        "k2": s.k2,
        "A1": s.A1.to_strings(),
        "A2": s.A2.to_strings(),
        "Ac1": s.Ac1.to_strings(),
        "Ac2": s.Ac2.to_strings(),
    }


def scheme_from_dict(d: dict) -> LinearScheme:
    try:
        k1, k2 = int(d["k1"]), int(d["k2"])
        mats = {name: BitMatrix.from_strings(d[name], k) for name, k in
                (("A1", k1), ("A2", k2), ("Ac1", k1), ("Ac2", k2))}
    except (KeyError, TypeError, ValueError) as exc:
        raise ParameterError(f"malformed scheme JSON: {exc}") from exc
    return LinearScheme(k1, k2, **mats)


def scheme_dumps(s: LinearScheme) -> str:
    return json.dumps(scheme_to_dict(s), indent=2) + "\n"


def scheme_loads(text: str) -> LinearScheme:
    try:
        return scheme_from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ParameterError(f"invalid JSON: {exc}") from exc


# -- decodability -------------------------------------------------------------


@dataclass(frozen=True)
class ReceiverRanks:
    signal: int
    interference: int
    joint: int


@dataclass(frozen=True)
class DecodabilityReport:
    rx1_ok: bool
    rx2_ok: bool
    achieved: tuple[int, int]
    rx1: ReceiverRanks | None = None
    rx2: ReceiverRanks | None = None

    @property
    def decodable(self) -> bool:
        return self.rx1_ok and self.rx2_ok

    def verdict(self) -> tuple[bool, bool]:
        return (self.rx1_ok, self.rx2_ok)

    def to_dict(self) -> dict:
        out = {"rx1_ok": self.rx1_ok, "rx2_ok": self.rx2_ok, "achieved": list(self.achieved)}
        for name, r in (("rx1_ranks", self.rx1), ("rx2_ranks", self.rx2)):
            if r is not None:
                out[name] = {"signal": r.signal, "interference": r.interference, "joint": r.joint}
        return out


def _check_dims(p: ChannelParams, s: LinearScheme) -> None:
    if s.m != p.m:
        raise ParameterError(f"scheme has {s.m} rows, channel needs m = {p.m}")


def receiver_maps(p: ChannelParams, s: LinearScheme, rx: int) -> tuple[BitMatrix, BitMatrix]:
    """(signal map, interference map) from the message pair to ``y_rx``."""
    _check_dims(p, s)
    m = p.m
    S = lambda n: shift_matrix(m, n)  # noqa: E731
    if rx == 1:
        sig = matmul(S(p.n11), s.A1) ^ matmul(S(p.n1c), s.Ac1)
        intf = matmul(S(p.n12), s.A2) ^ matmul(S(p.n1c), s.Ac2)
    elif rx == 2:
        sig = matmul(S(p.n22), s.A2) ^ matmul(S(p.n2c), s.Ac2)
        intf = matmul(S(p.n21), s.A1) ^ matmul(S(p.n2c), s.Ac1)
    else:
        raise ParameterError(f"receiver must be 1 or 2, got {rx}")
    return sig, intf


def receiver_ranks(sig: BitMatrix, intf: BitMatrix) -> ReceiverRanks:
    return ReceiverRanks(rank(sig), rank(intf), rank(hstack(sig, intf)))


def receiver_decodes(sig: BitMatrix, intf: BitMatrix) -> bool:
    return rank(hstack(sig, intf)) == sig.cols + rank(intf)


def decode_check(p: ChannelParams, s: LinearScheme) -> DecodabilityReport:
    r1 = receiver_ranks(*receiver_maps(p, s, 1))
    r2 = receiver_ranks(*receiver_maps(p, s, 2))
    return DecodabilityReport(
        r1.joint == s.k1 + r1.interference,
        r2.joint == s.k2 + r2.interference,
        s.rates,
        r1,
        r2,
    )


def _messages(k: int) -> list[BitVector]:
    return [BitVector(k, v) for v in range(1 << k)]


def brute_force_decode_check(p: ChannelParams, s: LinearScheme, cap: int = DEFAULT_BRUTE_FORCE_CAP) -> DecodabilityReport:
    """Enumerate every message pair through encode and the channel map.

    Receiver i decodes iff no output value is reachable from two different
    values of its own message.
    """
    _check_dims(p, s)
    if s.k1 + s.k2 > cap:
        raise CapError(f"k1 + k2 = {s.k1 + s.k2} exceeds brute-force cap {cap}")
    seen1: dict[int, int] = {}
    seen2: dict[int, int] = {}
    ok1 = ok2 = True
    for b1, b2 in product(_messages(s.k1), _messages(s.k2)):
        y1, y2 = transmit(p, *s.encode(b1, b2))
        if seen1.setdefault(y1.bits, b1.bits) != b1.bits:
            ok1 = False
        if seen2.setdefault(y2.bits, b2.bits) != b2.bits:
            ok2 = False
    return DecodabilityReport(ok1, ok2, s.rates)


# -- constructors -------------------------------------------------------------


def _identity_block(rows: range, first_bit: int = 0) -> list[tuple[int, int]]:
    return [(r, first_bit + j) for j, r in enumerate(rows)]


def example1_scheme(p: ChannelParams) -> LinearScheme:
    """Relay pre-cancels the cross-link interference at both receivers.

    Valid for ``n11 > n1c > n12`` and ``n22 > n2c > n21``; achieves
    ``(n11, n22)``.  The relay sends the XOR of two blocks: the top ``n21``
    bits of b1, placed to land exactly on their interfering copy at
    receiver 2, and the top ``n12`` bits of b2, placed likewise for
    receiver 1 (only bits the cross link actually carries).  Each receiver then sees a shifted copy of its own message,
    which it can remove unless the copy falls on the same levels.
    """
    violation = bounds.mixed_regime_violation(p)
    if violation is not None:
        raise RegimeError(f"mixed regime violated: {violation}")
    m = p.m
    n11, n12, n21, n22, n1c, n2c = p.as_tuple()
    a1 = _placement(m, n11, _identity_block(range(n11)))
    a2 = _placement(m, n22, _identity_block(range(n22)))
    ac1 = _placement(m, n11, [(n2c - n21 + j, j) for j in range(min(n21, n11))])
    ac2 = _placement(m, n22, [(n1c - n12 + j, j) for j in range(min(n12, n22))])
    notes = []
    # The construction itself needs no extra condition; this one is only reported.
    literal = bounds.pos(n21 - bounds.pos(n1c - n2c))
    if n11 == literal:
        notes.append(f"non-alignment condition n11 != [n21 - [n1c - n2c]+]+ fails (both {n11}); scheme still decodes")
    return LinearScheme(n11, n22, a1, a2, ac1, ac2, label="relay pre-cancellation", notes=tuple(notes))


CORNER_ALIASES = {"A": "A", "1": "A", "B": "B", "2": "B"}


def region_corner(region, corner: str):
    """Own-rate-maximal corner of a region: ``A`` maximizes R1 then R2, ``B`` the reverse."""
    key = CORNER_ALIASES.get(str(corner).upper())
    if key is None:
        raise ParameterError(f"unknown corner {corner!r}; use A/1 or B/2")
    if key == "A":
        return max(region.vertices, key=lambda v: (v[0], v[1]))
    return max(region.vertices, key=lambda v: (v[1], v[0]))


def _weak_weak(p: ChannelParams) -> LinearScheme:
    m = p.m
    a1 = _placement(m, p.n11, _identity_block(range(p.n11)))
    a2 = _placement(m, p.n22, _identity_block(range(p.n22)))
    return LinearScheme(p.n11, p.n22, a1, a2, BitMatrix.zeros(m, p.n11), BitMatrix.zeros(m, p.n22),
                        label="relay silent")


def _broadcast(p: ChannelParams, corner: str) -> LinearScheme:
    m, nc = p.m, p.n1c
    full = _placement(m, nc, _identity_block(range(nc)))
    z0 = BitMatrix.zeros(m, 0)
    if corner == "A":
        return LinearScheme(nc, 0, BitMatrix.zeros(m, nc), z0, full, z0, label="relay serves user 1")
    return LinearScheme(0, nc, z0, BitMatrix.zeros(m, nc), z0, full, label="relay serves user 2")


def _aligned_user1(p: ChannelParams, corner: str) -> LinearScheme:
    # n11 = n1c - n2c: relay levels at receiver 2 sit exactly below the top n2c.
    m, n11, n22, n1c, n2c = p.m, p.n11, p.n22, p.n1c, p.n2c
    if corner == "A":
        # Relay tops up user 1 to n1c; user 2 keeps only levels above the relay.
        k1, k2 = n1c, bounds.pos(n22 - n2c)
        a1 = _placement(m, k1, _identity_block(range(n11)))
        ac1 = _placement(m, k1, _identity_block(range(n2c), first_bit=n11))
        a2 = _placement(m, k2, _identity_block(range(k2)))
        return LinearScheme(k1, k2, a1, a2, ac1, BitMatrix.zeros(m, k2), label="relay serves user 1")
    s = bounds.pos(n2c - n22)
    k1, k2 = n11, n22 + s
    a1 = _placement(m, k1, _identity_block(range(n11)))
    a2 = _placement(m, k2, _identity_block(range(n22)))
    ac2 = _placement(m, k2, _identity_block(range(s), first_bit=n22))
    return LinearScheme(k1, k2, a1, a2, BitMatrix.zeros(m, k1), ac2, label="relay serves user 2")


def _strong_strong_a(p: ChannelParams) -> LinearScheme:
    m, n11, n22, n1c, n2c = p.m, p.n11, p.n22, p.n1c, p.n2c
    k1 = n1c
    t = bounds.pos(n2c - n1c)  # relay components invisible at receiver 1
    extra = bounds.pos(min(n22, n2c - n1c + n11) - t)
    k2 = t + extra
    a1 = _placement(m, k1, _identity_block(range(n11)))
    ac1 = _placement(m, k1, _identity_block(range(n1c - n11), first_bit=n11))
    ac2 = _placement(m, k2, _identity_block(range(n1c, n1c + t)))
    # x2 fills receiver-2 heights t+1 .. t+extra, i.e. components n22-t-1 down.
    a2 = _placement(m, k2, [(n22 - t - 1 - j, t + j) for j in range(extra)])
    s = LinearScheme(k1, k2, a1, a2, ac1, ac2, label="relay tops up user 1, serves user 2 below it")
    unclipped = min(max(n22, n2c - n1c), n2c - (n1c - n11))
    if unclipped != k2:
        s = s.with_notes(f"unclipped corner expression min{{max{{n22, n2c-n1c}}, n2c-(n1c-n11)}} = {unclipped}, "
                         f"corner R2 is {k2}")
    return s


def _weak_strong(p: ChannelParams, corner: str) -> LinearScheme:
    # n11 >= n1c, n22 < n2c.
    m, n11, n22, n1c, n2c = p.m, p.n11, p.n22, p.n1c, p.n2c
    if corner == "A":
        t = bounds.pos(n2c - n1c)
        extra = bounds.pos(n22 - t)
        k1, k2 = n11, t + extra
        a1 = _placement(m, k1, _identity_block(range(n11)))
        ac2 = _placement(m, k2, _identity_block(range(n1c, n1c + t)))
        a2 = _placement(m, k2, _identity_block(range(extra), first_bit=t))
        return LinearScheme(k1, k2, a1, a2, BitMatrix.zeros(m, k1), ac2,
                            label="relay serves user 2 in levels receiver 1 cannot see")
    top = n2c - n22  # relay components carrying b2 above x2 at receiver 2
    below = bounds.pos(n1c - n2c + n22)  # clean levels under the relay at receiver 1
    k1, k2 = n11 - n1c + below, n2c
    a2 = _placement(m, k2, _identity_block(range(n22)))
    ac2 = _placement(m, k2, _identity_block(range(top), first_bit=n22))
    pairs = [(i, i) for i in range(n11 - n1c)]
    pairs += [(n11 - below + j, n11 - n1c + j) for j in range(below)]
    a1 = _placement(m, k1, pairs)
    return LinearScheme(k1, k2, a1, a2, BitMatrix.zeros(m, k1), ac2,
                        label="relay tops up user 2, user 1 avoids its levels")


def example2_scheme(p: ChannelParams, corner: str) -> LinearScheme:
    """Corner-point scheme for a channel without cross links.

    ``corner`` is ``A`` (or ``1``) for the corner maximizing R1, ``B`` (or
    ``2``) for the corner maximizing R2.  The returned scheme is built for
    the sub-case of ``p``; its rates are meant to equal that corner of
    :func:`bounds.capacity_no_interference`.
    """
    if p.n12 or p.n21:
        raise RegimeError(f"no-interference regime violated: n12 = {p.n12}, n21 = {p.n21}")
    key = CORNER_ALIASES.get(str(corner).upper())
    if key is None:
        raise ParameterError(f"unknown corner {corner!r}; use A/1 or B/2")
    other = "B" if key == "A" else "A"
    case = bounds.no_interference_case(p)
    if case == bounds.DEGENERATE_BROADCAST:
        s = _broadcast(p, key)
    elif case == bounds.ALIGNED_1:
        s = _aligned_user1(p, key)
    elif case == bounds.ALIGNED_2:
        s = swap_scheme(_aligned_user1(swap_users(p), other))
    elif case == bounds.WEAK_WEAK:
        s = _weak_weak(p)
    elif case == bounds.STRONG_STRONG:
        s = _strong_strong_a(p) if key == "A" else swap_scheme(_strong_strong_a(swap_users(p)))
    elif case == bounds.WEAK_STRONG:
        s = _weak_strong(p, key)
    else:
        s = swap_scheme(_weak_strong(swap_users(p), other))
    return s.with_notes(label=f"{case} corner {key}: {s.label}")


def constructed_schemes(p: ChannelParams) -> Iterator[tuple[str, LinearScheme]]:
    """Every constructor output that applies to ``p``."""
    if bounds.in_mixed_regime(p):
        yield "example1", example1_scheme(p)
    if p.n12 == 0 and p.n21 == 0:
        for corner in ("A", "B"):
            yield f"example2-{corner}", example2_scheme(p, corner)


# -- linear decoding and simulation ------------------------------------------------


class LinearDecoder:
    """Solves ``[M_sig M_int] z = y`` and keeps the own-message part of z."""

    def __init__(self, p: ChannelParams, s: LinearScheme, rx: int):
        sig, intf = receiver_maps(p, s, rx)
        self.k = sig.cols
        self.solve = LinearSolver(hstack(sig, intf))

    def __call__(self, y: BitVector) -> BitVector | None:
        z = self.decode_bits(y.bits)
        return None if z is None else BitVector(self.k, z)

    def decode_bits(self, y: int) -> int | None:
        z = self.solve.solve_bits(y)
        return None if z is None else z & ((1 << self.k) - 1)


def colliding_pair(p: ChannelParams, s: LinearScheme, rx: int):
    """Two message pairs with different own messages and equal output at ``rx``."""
    sig, intf = receiver_maps(p, s, rx)
    k = sig.cols
    for z in nullspace(hstack(sig, intf)):
        own = z.bits & ((1 << k) - 1)
        if own:
            other = z.bits >> k
            zero = (BitVector(s.k1, 0), BitVector(s.k2, 0))
            if rx == 1:
                return zero, (BitVector(s.k1, own), BitVector(s.k2, other))
            return zero, (BitVector(s.k1, other), BitVector(s.k2, own))
    return None


@dataclass
class SimulationReport:
    trials: int
    seed: int
    exhaustive: bool
    errors_rx1: int
    errors_rx2: int
    collisions: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.collisions and self.errors_rx1 == 0 and self.errors_rx2 == 0

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "exhaustive": self.exhaustive,
            "errors_rx1": self.errors_rx1,
            "errors_rx2": self.errors_rx2,
            "collisions": self.collisions,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def simulate_scheme(p: ChannelParams, s: LinearScheme, trials: int = 1000, seed: int = 0,
                    exhaustive: bool = False) -> SimulationReport:
    """Encode, transmit and linearly decode random messages; count errors.

    A receiver that fails :func:`decode_check` is not simulated; the report
    carries one colliding message pair for it instead.  With
    ``exhaustive=True`` every message pair is run once (k1 + k2 <= 12).
    """
    report = decode_check(p, s)
    collisions = {}
    for rx, ok in ((1, report.rx1_ok), (2, report.rx2_ok)):
        if not ok:
            pair = colliding_pair(p, s, rx)
            collisions[f"rx{rx}"] = [[str(b1), str(b2)] for b1, b2 in pair]
    if exhaustive:
        if s.k1 + s.k2 > DEFAULT_BRUTE_FORCE_CAP:
            raise CapError(f"exhaustive simulation needs k1 + k2 <= {DEFAULT_BRUTE_FORCE_CAP}")
        messages = list(product(range(1 << s.k1), range(1 << s.k2)))
    else:
        rng = random.Random(seed)
        messages = [(rng.getrandbits(s.k1) if s.k1 else 0, rng.getrandbits(s.k2) if s.k2 else 0)
                    for _ in range(trials)]
    dec1 = LinearDecoder(p, s, 1) if report.rx1_ok else None
    dec2 = LinearDecoder(p, s, 2) if report.rx2_ok else None
    err1 = err2 = 0
    for b1, b2 in messages:
        y1, y2 = transmit_bits(p, *s.encode_bits(b1, b2))
        if dec1 is not None and dec1.decode_bits(y1) != b1:
            err1 += 1
        if dec2 is not None and dec2.decode_bits(y2) != b2:
            err2 += 1
    return SimulationReport(len(messages), seed, exhaustive, err1, err2, collisions)
