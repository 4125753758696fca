import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from panelglue.gf2 import (DimensionMismatch, GF2Matrix, GroupElement, enumerate_gl, gl_order, in_span, rank,
                           rank_ints, solve_affine_all_ones, span_ints)


def numpy_rank(rows: list[list[int]]) -> int:
    """Plain Gaussian elimination mod 2, used as an oracle."""
    a = np.array(rows, dtype=np.uint8) % 2
    if a.size == 0:
        return 0
    r = 0
    for c in range(a.shape[1]):
        piv = np.flatnonzero(a[r:, c])
        if not len(piv):
            continue
        p = r + piv[0]
        a[[r, p]] = a[[p, r]]
        for i in range(a.shape[0]):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
        if r == a.shape[0]:
            break
    return r


matrices = st.integers(1, 9).flatmap(
    lambda n: st.integers(1, 9).flatmap(
        lambda m: st.lists(st.lists(st.integers(0, 1), min_size=m, max_size=m), min_size=n, max_size=n)))


class TestGroupElement:
    def test_string_form_puts_coordinate_one_first(self):
        e1 = GroupElement.basis(1, 2)
        assert str(e1) == "10"
        assert GroupElement.parse("10") == e1
        assert GroupElement.parse("011").bits == (0, 1, 1)

    def test_addition_and_dot(self):
        a, b = GroupElement.parse("110"), GroupElement.parse("011")
        assert str(a + b) == "101"
        assert a + a == GroupElement.zero(3)
        assert a.dot(b) == 1
        assert a.dot(a) == 0

    def test_mismatched_lengths_raise(self):
        with pytest.raises(DimensionMismatch):
            GroupElement.parse("10") + GroupElement.parse("100")

    @pytest.mark.parametrize("text", ["12", "1a", "1 0"])
    def test_parse_rejects_non_bits(self, text):
        with pytest.raises(ValueError):
            GroupElement.parse(text)

    def test_value_range_checked(self):
        with pytest.raises(ValueError):
            GroupElement(4, 2)
        with pytest.raises(ValueError):
            GroupElement.basis(3, 2)

    def test_from_bits_roundtrip(self):
        for v in range(16):
            g = GroupElement(v, 4)
            assert GroupElement.from_bits(g.bits) == g


class TestRank:
    def test_examples(self):
        e = [GroupElement.parse(s) for s in ("10", "01", "11")]
        assert rank(e) == 2
        assert rank([GroupElement.parse("00")]) == 0
        assert rank([]) == 0

    @given(matrices)
    @settings(max_examples=200, deadline=None)
    def test_rank_matches_numpy_oracle(self, rows):
        expected = numpy_rank(rows)
        mat = GF2Matrix.from_lists(rows)
        assert mat.rank("dense") == expected
        assert mat.rank("sparse") == expected
        assert mat.transpose().rank() == expected
        assert rank_ints(mat.rows) == expected

    def test_in_span_and_span(self):
        basis = [GroupElement.parse("110"), GroupElement.parse("011")]
        assert in_span(GroupElement.parse("101"), basis)
        assert not in_span(GroupElement.parse("100"), basis)
        assert len(span_ints([3, 6])) == 4


class TestSolveAllOnes:
    def test_independent_vectors_are_solvable(self):
        vs = [GroupElement.parse(s) for s in ("10", "01")]
        c = solve_affine_all_ones(vs)
        assert c is not None and all(c.dot(v) == 1 for v in vs)

    def test_sum_of_two_constraints_is_contradictory(self):
        vs = [GroupElement.parse(s) for s in ("10", "01", "11")]
        assert solve_affine_all_ones(vs) is None

    def test_empty(self):
        assert solve_affine_all_ones([], 2) == GroupElement.parse("10")
        with pytest.raises(ValueError):
            solve_affine_all_ones([])

    @given(st.integers(1, 4).flatmap(lambda m: st.tuples(st.just(m), st.lists(st.integers(0, (1 << m) - 1), max_size=6))))
    @settings(max_examples=200, deadline=None)
    def test_agrees_with_brute_force(self, data):
        m, values = data
        vs = [GroupElement(v, m) for v in values]
        brute = [c for c in range(1 << m) if all(GroupElement(c, m).dot(v) == 1 for v in vs)]
        got = solve_affine_all_ones(vs, m)
        if brute:
            assert got is not None and all(got.dot(v) == 1 for v in vs)
        else:
            assert got is None


class TestMatrix:
    def test_apply_and_matmul(self):
        a = GF2Matrix.from_lists([[1, 1], [0, 1]])
        assert a.apply(0b01) == 0b01
        assert a.apply(0b10) == 0b11
        assert (a @ a).to_lists() == [[1, 0], [0, 1]]
        assert GF2Matrix.identity(3).is_invertible()

    def test_from_columns_matches_lists(self):
        m = GF2Matrix.from_columns(3, [[0, 2], [1]])
        assert m.to_lists() == [[1, 0], [0, 1], [1, 0]]
        assert m.columns() == [[0, 2], [1]]

    def test_shape_mismatch(self):
        with pytest.raises(DimensionMismatch):
            GF2Matrix.from_lists([[1, 0], [1]])
        with pytest.raises(DimensionMismatch):
            GF2Matrix.identity(2) @ GF2Matrix.identity(3)

    def test_row_reduce(self):
        red, pivots = GF2Matrix.from_lists([[1, 1, 0], [1, 1, 1], [0, 0, 1]]).row_reduce()
        assert len(pivots) == 2


@pytest.mark.parametrize("m", range(0, 5))
def test_enumerate_gl_is_exhaustive_and_duplicate_free(m):
    mats = list(enumerate_gl(m))
    assert len(mats) == gl_order(m) == len({x.rows for x in mats})
    assert all(x.is_invertible() for x in mats)


def test_gl_brute_force_m2():
    brute = [r for r in itertools.product(range(4), repeat=2) if rank_ints(r) == 2]
    assert sorted(x.rows for x in enumerate_gl(2)) == sorted(brute)


def test_gl_guard():
    with pytest.raises(ValueError):
        next(enumerate_gl(6))
