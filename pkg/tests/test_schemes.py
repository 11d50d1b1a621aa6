import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from detic_cr import bounds, schemes
from detic_cr.channel import ChannelParams, all_params, swap_users
from detic_cr.exceptions import CapError, ParameterError, RegimeError
from detic_cr.gf2 import BitMatrix, BitVector

SQUARE = ChannelParams(5, 1, 1, 5, 3, 3)
PENTAGON = ChannelParams(4, 0, 0, 2, 3, 6)


def naive(p: ChannelParams) -> schemes.LinearScheme:
    """Full-rate direct transmission with a silent relay."""
    m = p.m
    return schemes.LinearScheme(p.n11, p.n22, BitMatrix.identity(m), BitMatrix.identity(m),
                                BitMatrix.zeros(m, m), BitMatrix.zeros(m, m))


class TestScheme:
    def test_dimension_checks(self):
        with pytest.raises(ParameterError):
            schemes.LinearScheme(1, 0, BitMatrix.zeros(2, 2), BitMatrix.zeros(2, 0),
                                 BitMatrix.zeros(2, 1), BitMatrix.zeros(2, 0))
        with pytest.raises(ParameterError):
            schemes.decode_check(SQUARE, schemes.empty_scheme(3))

    def test_encode(self):
        s = schemes.example1_scheme(SQUARE)
        b1, b2 = BitVector.from_str("10000"), BitVector.from_str("00000")
        x1, xc, x2 = s.encode(b1, b2)
        assert str(x1) == "10000" and str(xc) == "00100" and x2.bits == 0

    def test_json_roundtrip(self):
        s = schemes.example2_scheme(PENTAGON, "A")
        text = schemes.scheme_dumps(s)
        assert schemes.scheme_loads(text) == s
        assert schemes.scheme_dumps(schemes.scheme_loads(text)) == text
        rows = json.loads(schemes.scheme_dumps(schemes.empty_scheme(2)))["A1"]
        assert rows == ["", ""]

    def test_bad_json(self):
        with pytest.raises(ParameterError):
            schemes.scheme_loads("{")
        with pytest.raises(ParameterError):
            schemes.scheme_loads('{"k1": 1}')


class TestDecodeCheck:
    def test_empty(self):
        rep = schemes.decode_check(SQUARE, schemes.empty_scheme(5))
        assert rep.decodable and rep.achieved == (0, 0)
        assert schemes.brute_force_decode_check(SQUARE, schemes.empty_scheme(5)).decodable

    def test_naive_collides(self):
        rep = schemes.decode_check(SQUARE, naive(SQUARE))
        assert not rep.rx1_ok and not rep.rx2_ok
        assert (rep.rx1.joint, rep.rx1.signal, rep.rx1.interference) == (5, 5, 1)
        assert not schemes.brute_force_decode_check(SQUARE, naive(SQUARE)).rx1_ok

    def test_example1(self):
        s = schemes.example1_scheme(SQUARE)
        assert s.rates == (5, 5)
        assert schemes.decode_check(SQUARE, s).decodable
        assert schemes.brute_force_decode_check(SQUARE, s).decodable

    def test_brute_force_cap(self):
        with pytest.raises(CapError):
            schemes.brute_force_decode_check(SQUARE, naive(SQUARE), cap=9)

    def test_bad_receiver(self):
        with pytest.raises(ParameterError):
            schemes.receiver_maps(SQUARE, naive(SQUARE), 3)

    @settings(max_examples=150, deadline=None)
    @given(st.builds(ChannelParams, *[st.integers(0, 3)] * 6), st.integers(0, 3), st.integers(0, 3), st.integers(0, 2**32))
    def test_rank_rule_matches_enumeration(self, p, k1, k2, seed):
        s = schemes.random_scheme(p.m, k1, k2, random.Random(seed))
        assert schemes.decode_check(p, s).verdict() == schemes.brute_force_decode_check(p, s).verdict()

    def test_swap_symmetry(self):
        rng = random.Random(5)
        for p in [SQUARE, PENTAGON, ChannelParams(2, 1, 3, 1, 0, 2)]:
            for _ in range(20):
                s = schemes.random_scheme(p.m, 2, 1, rng)
                a = schemes.decode_check(p, s)
                b = schemes.decode_check(swap_users(p), schemes.swap_scheme(s))
                assert (a.rx1_ok, a.rx2_ok) == (b.rx2_ok, b.rx1_ok)


class TestExample1:
    def test_smaller_tuple(self):
        s = schemes.example1_scheme(ChannelParams(3, 1, 1, 3, 2, 2))
        assert s.rates == (3, 3)
        assert schemes.decode_check(ChannelParams(3, 1, 1, 3, 2, 2), s).decodable

    def test_guard(self):
        with pytest.raises(RegimeError, match="n22 < n2c"):
            schemes.example1_scheme(PENTAGON)

    def test_regime_sweep(self):
        for p in all_params(4):
            if bounds.in_mixed_regime(p):
                s = schemes.example1_scheme(p)
                assert s.rates == (p.n11, p.n22)
                assert schemes.decode_check(p, s).decodable, p

    def test_printed_condition_note(self):
        # Decodable although n11 equals [n21 - [n1c - n2c]+]+.
        p = ChannelParams(3, 0, 3, 5, 1, 4)
        s = schemes.example1_scheme(p)
        assert schemes.decode_check(p, s).decodable
        assert any("non-alignment" in n for n in s.notes)
        assert not schemes.example1_scheme(SQUARE).notes


class TestExample2:
    def test_pentagon_corners(self):
        a = schemes.example2_scheme(PENTAGON, "1")
        b = schemes.example2_scheme(PENTAGON, "2")
        assert a.rates == (4, 3) and b.rates == (1, 6)
        assert schemes.decode_check(PENTAGON, a).decodable
        assert schemes.decode_check(PENTAGON, b).decodable

    def test_relay_silent(self):
        p = ChannelParams(3, 0, 0, 4, 2, 3)
        for corner in "AB":
            s = schemes.example2_scheme(p, corner)
            assert s.rates == (3, 4) and s.Ac1.is_zero() and s.Ac2.is_zero()
            assert schemes.decode_check(p, s).decodable

    def test_broadcast(self):
        p = ChannelParams(0, 0, 0, 0, 2, 2)
        assert schemes.example2_scheme(p, "A").rates == (2, 0)
        assert schemes.example2_scheme(p, "B").rates == (0, 2)

    def test_guards(self):
        with pytest.raises(RegimeError):
            schemes.example2_scheme(SQUARE, "A")
        with pytest.raises(ParameterError):
            schemes.example2_scheme(PENTAGON, "C")

    def test_all_corners_small_gains(self):
        for p in all_params(4):
            if p.n12 or p.n21:
                continue
            cap = bounds.capacity_no_interference(p)
            for corner in "AB":
                s = schemes.example2_scheme(p, corner)
                assert s.rates == schemes.region_corner(cap, corner), (p, corner)
                assert schemes.decode_check(p, s).decodable, (p, corner)

    def test_strong_strong_formula_flag(self):
        flagged = {}
        for p in all_params(4):
            if p.n12 == 0 and p.n21 == 0 and bounds.no_interference_case(p) == bounds.STRONG_STRONG:
                s = schemes.example2_scheme(p, "A")
                if any("unclipped" in n for n in s.notes):
                    flagged[p] = s.k2
        # The expression goes negative where the corner rate is zero.
        assert flagged[ChannelParams(0, 0, 0, 0, 2, 1)] == 0
        assert set(flagged.values()) == {0}


class TestSimulation:
    def test_example1(self):
        rep = schemes.simulate_scheme(SQUARE, schemes.example1_scheme(SQUARE), trials=1000, seed=7)
        assert rep.ok and rep.trials == 1000

    def test_empty(self):
        rep = schemes.simulate_scheme(SQUARE, schemes.empty_scheme(5), trials=10)
        assert rep.ok

    def test_naive_reports_collision(self):
        rep = schemes.simulate_scheme(SQUARE, naive(SQUARE), trials=10)
        assert not rep.ok
        (a1, a2), (b1, b2) = rep.collisions["rx1"]
        assert a1 != b1
        from detic_cr.channel import transmit
        s = naive(SQUARE)
        ya = transmit(SQUARE, *s.encode(BitVector.from_str(a1), BitVector.from_str(a2))).y1
        yb = transmit(SQUARE, *s.encode(BitVector.from_str(b1), BitVector.from_str(b2))).y1
        assert ya == yb

    def test_deterministic(self):
        s = schemes.example2_scheme(PENTAGON, "B")
        a = schemes.simulate_scheme(PENTAGON, s, trials=50, seed=3).dumps()
        b = schemes.simulate_scheme(PENTAGON, s, trials=50, seed=3).dumps()
        assert a == b

    def test_exhaustive(self):
        p = ChannelParams(3, 1, 1, 3, 2, 2)
        rep = schemes.simulate_scheme(p, schemes.example1_scheme(p), exhaustive=True)
        assert rep.trials == 64 and rep.ok


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 4), st.integers(0, 3), st.integers(0, 3), st.integers(0, 2**32), st.data())
def test_encode_matches_matrix_products(m, k1, k2, seed, data):
    from detic_cr.gf2 import apply

    s = schemes.random_scheme(m, k1, k2, random.Random(seed))
    b1 = BitVector(k1, data.draw(st.integers(0, (1 << k1) - 1)))
    b2 = BitVector(k2, data.draw(st.integers(0, (1 << k2) - 1)))
    x1, xc, x2 = s.encode(b1, b2)
    assert x1 == apply(s.A1, b1) and x2 == apply(s.A2, b2)
    assert xc == apply(s.Ac1, b1) ^ apply(s.Ac2, b2)


def test_encode_rejects_wrong_lengths():
    with pytest.raises(ParameterError):
        schemes.example1_scheme(SQUARE).encode(BitVector.zeros(4), BitVector.zeros(5))
