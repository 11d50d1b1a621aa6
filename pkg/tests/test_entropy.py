from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from detic_cr.channel import ChannelParams, transmit
from detic_cr.entropy import LABELS, cond_entropy, entropy, evaluate_term, joint, mi_min_bound, observable
from detic_cr.exceptions import ParameterError
from detic_cr.gf2 import BitVector

SQUARE = ChannelParams(5, 1, 1, 5, 3, 3)
PENTAGON = ChannelParams(4, 0, 0, 2, 3, 6)


def _direct(p, label, x1, xc, x2):
    """Evaluate one observable straight from the channel equations."""
    z = BitVector.zeros(p.m)
    if label == "X1":
        return x1
    if label == "X2":
        return x2
    if label == "Xc":
        return xc
    if label == "Y1":
        return transmit(p, x1, xc, x2).y1
    if label == "Y2":
        return transmit(p, x1, xc, x2).y2
    if label == "V12":
        return transmit(p, z, z, x2).y1
    if label == "V21":
        return transmit(p, x1, z, z).y2
    if label == "V1c":
        return transmit(p, z, xc, z).y1
    if label == "V2c":
        return transmit(p, z, xc, z).y2
    raise AssertionError(label)


def brute_entropy(p, labels):
    """log2 of the support size, enumerating every input triple."""
    m = p.m
    vecs = [BitVector(m, b) for b in range(1 << m)]
    seen = {tuple(_direct(p, s, x1, xc, x2).bits for s in labels) for x1, xc, x2 in product(vecs, vecs, vecs)}
    return len(seen).bit_length() - 1


small = st.builds(ChannelParams, *[st.integers(0, 2)] * 6)


@settings(max_examples=60, deadline=None)
@given(small, st.lists(st.sampled_from(LABELS), min_size=1, max_size=3, unique=True))
def test_rank_matches_support_size(p, labels):
    assert entropy(observable(p, ",".join(labels))) == brute_entropy(p, labels)


@settings(max_examples=40, deadline=None)
@given(small, st.sampled_from(LABELS), st.sampled_from(LABELS))
def test_conditional_against_support_sizes(p, a, b):
    expect = brute_entropy(p, [a, b]) - brute_entropy(p, [b])
    assert cond_entropy(observable(p, a), observable(p, b)) == expect


def test_cross_link_observable():
    assert entropy(observable(SQUARE, "V12")) == 1
    assert entropy(observable(PENTAGON, "V21")) == 0
    assert observable(PENTAGON, "V21").map.is_zero()


@pytest.mark.parametrize("p", [SQUARE, PENTAGON, ChannelParams(0, 0, 0, 0, 0, 0)])
def test_input_entropy_is_m(p):
    assert entropy(observable(p, "X1")) == p.m


def test_output_entropy():
    assert entropy(observable(SQUARE, "Y1")) == 5


def test_conditional_values():
    assert cond_entropy(observable(SQUARE, "Y1"), observable(SQUARE, "X2")) == 5
    assert cond_entropy(observable(SQUARE, "Y1"), observable(SQUARE, "V21")) == 4
    y = observable(PENTAGON, "Y2")
    assert cond_entropy(y, y) == 0


def test_mi_bound():
    assert mi_min_bound(observable(SQUARE, "V12"), observable(SQUARE, "V1c")) == 1
    assert mi_min_bound(observable(PENTAGON, "V21"), observable(PENTAGON, "V2c")) == 0


def test_zero_channel():
    assert entropy(observable(ChannelParams(0, 0, 0, 0, 0, 0), "Y1")) == 0


def test_joint_and_composite_agree():
    a = joint(observable(SQUARE, "Y1"), observable(SQUARE, "X2"))
    assert entropy(a) == entropy(observable(SQUARE, "Y1,X2"))


def test_mixing_params_rejected():
    with pytest.raises(ParameterError):
        joint(observable(SQUARE, "Y1"), observable(PENTAGON, "Y1"))


@pytest.mark.parametrize(
    "term,value",
    [("H(Y1|X2)", 5), ("H(Y1)", 5), ("H(Y1|V21)", 4), ("I(V12;V1c)", 1), ("H( Y2 | Y1 , X1 )", 5)],
)
def test_evaluate_term(term, value):
    assert evaluate_term(SQUARE, term) == value


@pytest.mark.parametrize("term", ["Y1", "H(Y1;X2)", "I(Y1|X2)", "H(Z)", "H()"])
def test_evaluate_term_errors(term):
    with pytest.raises(ParameterError):
        evaluate_term(SQUARE, term)
