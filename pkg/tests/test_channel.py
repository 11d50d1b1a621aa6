import pytest
from hypothesis import given, strategies as st

from detic_cr.channel import ChannelParams, all_params, new_params, parse_params, swap_users, transmit
from detic_cr.exceptions import ParameterError
from detic_cr.gf2 import BitVector

gains = st.integers(0, 6)
params = st.builds(ChannelParams, gains, gains, gains, gains, gains, gains)


def test_m_is_largest_gain():
    assert ChannelParams(5, 1, 1, 5, 3, 3).m == 5
    assert ChannelParams(0, 0, 0, 0, 0, 0).m == 0
    assert ChannelParams(4, 0, 0, 2, 3, 6).m == 6


@pytest.mark.parametrize("bad", [(-1, 0, 0, 0, 0, 0), (1.5, 0, 0, 0, 0, 0), (True, 0, 0, 0, 0, 0)])
def test_rejects_bad_gains(bad):
    with pytest.raises(ParameterError):
        new_params(*bad)


def test_parse():
    assert parse_params("4, 0,0,2,3,6") == ChannelParams(4, 0, 0, 2, 3, 6)
    for text in ("1,2,3", "a,0,0,0,0,0", "1,1,1,1,1,-1"):
        with pytest.raises(ParameterError):
            parse_params(text)


def test_swap():
    assert swap_users(ChannelParams(5, 1, 1, 5, 3, 3)) == ChannelParams(5, 1, 1, 5, 3, 3)
    assert swap_users(ChannelParams(4, 0, 0, 2, 3, 6)) == ChannelParams(2, 0, 0, 4, 6, 3)


@given(params)
def test_swap_is_involution(p):
    assert swap_users(swap_users(p)) == p


class TestTransmit:
    p = ChannelParams(5, 1, 1, 5, 3, 3)

    def test_top_bit_of_x1(self):
        e = BitVector.from_str("10000")
        z = BitVector.zeros(5)
        y1, y2 = transmit(self.p, e, z, z)
        assert str(y1) == "10000" and str(y2) == "00001"

    def test_top_bit_of_x2(self):
        e = BitVector.from_str("10000")
        z = BitVector.zeros(5)
        y1, y2 = transmit(self.p, z, z, e)
        assert str(y1) == "00001" and str(y2) == "10000"

    def test_zero_inputs(self):
        z = BitVector.zeros(5)
        assert transmit(self.p, z, z, z) == (z, z)

    def test_length_mismatch(self):
        with pytest.raises(ParameterError):
            transmit(self.p, BitVector.zeros(4), BitVector.zeros(5), BitVector.zeros(5))

    @given(params, st.data())
    def test_linear(self, p, data):
        m = p.m
        vec = st.integers(0, (1 << m) - 1).map(lambda b: BitVector(m, b))
        a = [data.draw(vec) for _ in range(3)]
        b = [data.draw(vec) for _ in range(3)]
        ya, yb = transmit(p, *a), transmit(p, *b)
        yab = transmit(p, *(u ^ v for u, v in zip(a, b)))
        assert yab.y1 == ya.y1 ^ yb.y1 and yab.y2 == ya.y2 ^ yb.y2


def test_all_params_count_and_order():
    tuples = list(all_params(1))
    assert len(tuples) == 64
    assert tuples[0] == ChannelParams(0, 0, 0, 0, 0, 0)
    assert len(list(all_params(0))) == 1


@given(params, st.data())
def test_transmit_matches_shift_matrices(p, data):
    from detic_cr.channel import shifts
    from detic_cr.gf2 import apply

    m = p.m
    x1, xc, x2 = (BitVector(m, data.draw(st.integers(0, (1 << m) - 1))) for _ in range(3))
    s = shifts(p)
    y1, y2 = transmit(p, x1, xc, x2)
    assert y1 == apply(s["n11"], x1) ^ apply(s["n1c"], xc) ^ apply(s["n12"], x2)
    assert y2 == apply(s["n21"], x1) ^ apply(s["n2c"], xc) ^ apply(s["n22"], x2)
