from itertools import product

import pytest
from hypothesis import given, strategies as st

from detic_cr.exceptions import ParameterError
from detic_cr.gf2 import (
    BitMatrix,
    BitVector,
    apply,
    column_space_intersection,
    hstack,
    matmul,
    nullspace,
    rank,
    shift_matrix,
    solve,
    stack_canonical_form,
    vstack,
)


def matrices(max_rows=5, max_cols=5):
    return st.integers(0, max_rows).flatmap(
        lambda r: st.integers(0, max_cols).flatmap(
            lambda c: st.lists(st.integers(0, (1 << c) - 1), min_size=r, max_size=r).map(
                lambda rows: BitMatrix(r, c, tuple(rows))
            )
        )
    )


def brute_rank(mat: BitMatrix) -> int:
    # log2 of the number of distinct images over all inputs
    images = {apply(mat, BitVector(mat.cols, x)).bits for x in range(1 << mat.cols)}
    return len(images).bit_length() - 1


class TestVectors:
    def test_roundtrip_list_and_str(self):
        v = BitVector.from_list([1, 0, 1, 1])
        assert v.tolist() == [1, 0, 1, 1]
        assert str(v) == "1011"
        assert BitVector.from_str("1011") == v

    def test_component_zero_is_bit_zero(self):
        assert BitVector.from_list([1, 0, 0]).bits == 1

    def test_rejects_non_binary(self):
        with pytest.raises(ParameterError):
            BitVector.from_list([0, 2])

    def test_rejects_overflow(self):
        with pytest.raises(ParameterError):
            BitVector(2, 4)

    def test_xor_length_mismatch(self):
        with pytest.raises(ParameterError):
            BitVector(2, 1) ^ BitVector(3, 1)

    def test_concat(self):
        v = BitVector.from_str("10").concat(BitVector.from_str("011"))
        assert str(v) == "10011"


class TestShift:
    def test_full_gain_is_identity(self):
        assert shift_matrix(3, 3) == BitMatrix.identity(3)

    def test_zero_gain_is_zero(self):
        s = shift_matrix(3, 0)
        assert s.is_zero()
        assert apply(s, BitVector.from_str("111")) == BitVector.zeros(3)

    def test_shift_by_one(self):
        assert str(apply(shift_matrix(3, 2), BitVector.from_str("110"))) == "011"

    def test_shift_by_two(self):
        assert str(apply(shift_matrix(4, 2), BitVector.from_str("1011"))) == "0010"

    def test_rank_equals_gain(self):
        assert rank(shift_matrix(4, 2)) == 2
        for m in range(6):
            for n in range(m + 1):
                assert rank(shift_matrix(m, n)) == n

    @pytest.mark.parametrize("m,n", [(3, 4), (-1, 0), (2, -1)])
    def test_bad_arguments(self, m, n):
        with pytest.raises(ParameterError):
            shift_matrix(m, n)


class TestProducts:
    def test_apply_zero_and_identity(self):
        v = BitVector.from_str("1101")
        assert apply(BitMatrix.zeros(4, 4), v) == BitVector.zeros(4)
        assert apply(BitMatrix.identity(4), v) == v

    def test_apply_dimension_mismatch(self):
        with pytest.raises(ParameterError):
            apply(BitMatrix.identity(3), BitVector.zeros(2))

    def test_matmul_dimension_mismatch(self):
        with pytest.raises(ParameterError):
            matmul(BitMatrix.identity(3), BitMatrix.identity(2))

    @given(matrices(), st.data())
    def test_matmul_agrees_with_apply(self, a, data):
        b = data.draw(matrices(max_rows=a.cols, max_cols=4).filter(lambda b: b.rows == a.cols))
        for x in range(1 << b.cols):
            v = BitVector(b.cols, x)
            assert apply(matmul(a, b), v) == apply(a, apply(b, v))


class TestStacking:
    def test_hstack_with_zero_column(self):
        h = hstack(BitMatrix.identity(2), BitMatrix.zeros(2, 1))
        assert (h.rows, h.cols) == (2, 3)
        assert rank(h) == 2

    def test_hstack_shifts(self):
        assert rank(hstack(shift_matrix(5, 5), shift_matrix(5, 3))) == 5

    def test_mismatch(self):
        with pytest.raises(ParameterError):
            hstack(BitMatrix.identity(2), BitMatrix.identity(3))
        with pytest.raises(ParameterError):
            vstack(BitMatrix.identity(2), BitMatrix.zeros(2, 3))

    @given(matrices())
    def test_vstack_duplicate_keeps_rank(self, a):
        assert rank(vstack(a, a)) == rank(a)

    @given(matrices(), matrices())
    def test_vstack_rank_lower_bound(self, a, b):
        if a.cols == b.cols:
            assert rank(vstack(a, b)) >= max(rank(a), rank(b))


class TestRank:
    def test_trivial(self):
        assert rank(BitMatrix.zeros(3, 4)) == 0
        assert rank(BitMatrix.identity(4)) == 4
        assert rank(BitMatrix.zeros(0, 0)) == 0

    @given(matrices())
    def test_against_image_count(self, a):
        assert rank(a) == brute_rank(a)

    @given(matrices())
    def test_transpose_invariant(self, a):
        assert rank(a.transpose()) == rank(a)


class TestCanonicalForm:
    def test_identity_fixed(self):
        assert stack_canonical_form(BitMatrix.identity(3)) == BitMatrix.identity(3)

    def test_three_lines_in_the_plane(self):
        forms = {stack_canonical_form(BitMatrix.from_columns([c], 2)) for c in (1, 2, 3)}
        assert len(forms) == 3

    @given(matrices(max_rows=4, max_cols=3), st.data())
    def test_invariant_under_basis_change(self, a, data):
        k = a.cols
        invertible = [t for t in (BitMatrix(k, k, tuple(r)) for r in product(range(1 << k), repeat=k)) if rank(t) == k]
        t = data.draw(st.sampled_from(invertible))
        assert stack_canonical_form(matmul(a, t)) == stack_canonical_form(a)

    @given(matrices(max_rows=4, max_cols=3))
    def test_idempotent_and_same_column_space(self, a):
        c = stack_canonical_form(a)
        assert stack_canonical_form(c) == c
        assert rank(c) == rank(a) == rank(hstack(a, c))


class TestSolve:
    @given(matrices(), st.data())
    def test_solution_is_valid(self, a, data):
        x = BitVector(a.cols, data.draw(st.integers(0, (1 << a.cols) - 1)))
        y = apply(a, x)
        sol = solve(a, y)
        assert sol is not None and apply(a, sol) == y

    def test_inconsistent(self):
        a = BitMatrix.from_strings(["1", "1"])
        assert solve(a, BitVector.from_str("10")) is None

    @given(matrices())
    def test_nullspace(self, a):
        basis = nullspace(a)
        assert len(basis) == a.cols - rank(a)
        for v in basis:
            assert apply(a, v).bits == 0

    def test_column_space_intersection(self):
        a = BitMatrix.from_columns([0b001, 0b010], 3)
        b = BitMatrix.from_columns([0b011, 0b100], 3)
        assert column_space_intersection(a, b) == [0b011]


def test_matrix_string_roundtrip():
    m = BitMatrix.from_strings(["101", "011"])
    assert BitMatrix.from_strings(m.to_strings()) == m
    assert str(m) == "101\n011"
    assert m.transpose().transpose() == m


@given(matrices(), st.data())
def test_precomputed_solver_matches_solve(a, data):
    from detic_cr.gf2 import LinearSolver

    solver = LinearSolver(a)
    for _ in range(4):
        y = BitVector(a.rows, data.draw(st.integers(0, (1 << a.rows) - 1)))
        assert solver(y) == solve(a, y)
