"""Exact scalar fields and the sparse/dense linear algebra kernel."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import surfalg as sa
from surfalg.fields import PrimeField
from surfalg.linalg import (
    RowSolver,
    dense_invert,
    dense_left_kernel,
    dense_mul,
    dense_rank,
    det_int,
    intersection_dim,
    rank_of_rows,
)


def test_rational_parse_and_fmt():
    F = sa.QQ
    assert F.parse("3/4") == Fraction(3, 4)
    assert F.parse("-2") == Fraction(-2)
    assert F.fmt(Fraction(5, 3)) == "5/3"
    assert F.fmt(Fraction(4, 2)) == "2"
    for bad in ("1/0", "x", "1.5", True, None, [1]):
        with pytest.raises(ValueError):
            F.parse(bad)


@given(st.integers(-100, 100), st.integers(1, 100))
def test_rational_fmt_parse_round_trip(n, d):
    F = sa.QQ
    x = Fraction(n, d)
    assert F.parse(F.fmt(x)) == x


def test_prime_field_ops():
    F = PrimeField(7)
    assert F.char == 7
    assert F.add(5, 4) == 2
    assert F.mul(3, 5) == 1
    assert F.inv(3) == 5
    assert F.neg(2) == 5
    assert F.parse(10) == 3
    with pytest.raises(ValueError):
        F.parse("3")
    with pytest.raises(ValueError):
        PrimeField(6)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


@given(st.sampled_from([2, 3, 5, 13]), st.integers(1, 1000))
def test_prime_field_inverse_property(p, a):
    F = PrimeField(p)
    x = a % p
    if x:
        assert F.mul(x, F.inv(x)) == 1


def test_field_from_json():
    assert sa.field_from_json("Q") == sa.QQ
    assert sa.field_from_json({"Fp": 5}) == PrimeField(5)
    for bad in ("R", {"Fp": 4}, {"GF": 5}, 7):
        with pytest.raises(ValueError):
            sa.field_from_json(bad)


def test_rank_of_sparse_rows():
    F = sa.QQ
    one = F.one
    rows = [{"x": one, "y": one},
            {"y": one},
            {"x": one, "y": F.add(one, one)}]
    assert rank_of_rows(rows, F) == 2


def test_row_solver_solve_and_contains():
    F = sa.QQ
    one = F.one
    rows = [{0: one, 1: one}, {1: one, 2: one}]
    sol = RowSolver(rows, F)
    combo = sol.solve({0: one, 1: F.parse("2"), 2: one})
    assert combo == {0: one, 1: one}
    assert sol.contains({0: one, 1: one})
    assert not sol.contains({0: one, 2: one})
    assert sol.solve({0: one}) is None


def test_row_solver_kernel():
    F = sa.QQ
    one = F.one
    rows = [{0: one}, {0: one}, {1: one}]
    combos = RowSolver(rows, F).kernel()
    assert len(combos) == 1
    combo = combos[0]
    # the kernel combination cancels the duplicated row
    acc = {}
    for idx, cf in combo.items():
        for col, v in rows[idx].items():
            acc[col] = F.add(acc.get(col, F.zero), F.mul(cf, v))
    assert all(v == F.zero for v in acc.values())


def test_dense_helpers():
    F = sa.QQ
    one, zero = F.one, F.zero
    a = [[one, zero], [one, one]]
    b = [[one, one], [zero, one]]
    assert dense_rank(a, F) == 2
    prod = dense_mul(a, b, F)
    assert prod == [[one, one], [one, F.parse("2")]]
    inv = dense_invert(a, F)
    assert dense_mul(a, inv, F) == [[one, zero], [zero, one]]
    assert dense_invert([[one, one], [one, one]], F) is None
    ker = dense_left_kernel([[one, one], [one, one]], F)
    assert len(ker) == 1


def test_det_int():
    assert det_int([[2, 0], [0, 3]]) == 6
    assert det_int([[1, 2], [2, 4]]) == 0
    assert det_int([[0, 1], [1, 0]]) == -1
    assert det_int([[4]]) == 4


def test_intersection_dim():
    F = sa.QQ
    one = F.one
    u = [{0: one}, {1: one}]
    v = [{1: one}, {2: one}]
    assert intersection_dim(u, v, F) == 1
    assert intersection_dim(u, [{2: one}], F) == 0


def test_prime_field_linear_algebra():
    F = PrimeField(2)
    rows = [{0: 1, 1: 1}, {1: 1, 2: 1}, {0: 1, 2: 1}]
    # third row is the sum of the first two over F2
    assert rank_of_rows(rows, F) == 2
