from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dhopf.exactlin import (
    Cyclotomic,
    Matrix,
    canon,
    extend_basis,
    image_basis,
    inverse,
    kernel_basis,
    parse_scalar,
    rank,
    rref,
    scalar_to_str,
    solve,
    zeta,
)

rationals = st.fractions(max_denominator=7).filter(lambda x: abs(x) < 50)


def cyclo(order):
    return st.lists(st.integers(-4, 4), min_size=order, max_size=order).map(lambda c: Cyclotomic.make(order, c))


def matrices(rows, cols):
    return st.lists(st.lists(st.integers(-3, 3), min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(
        lambda d: Matrix(d, rows, cols)
    )


def test_roots_of_unity():
    assert zeta(4) ** 2 == -1
    assert zeta(3) + zeta(3, 2) == -1
    assert zeta(8) * zeta(8, 7) == 1
    assert zeta(2) == -1 and zeta(1) == 1
    assert zeta(6) ** 3 == -1


def test_canonical_rationals():
    assert canon(Fraction(4, 2)) == 2 and isinstance(canon(Fraction(4, 2)), int)
    assert Fraction(1, 2) + Fraction(1, 3) == Fraction(5, 6)
    # a cyclotomic with rational value collapses to a rational
    assert isinstance(zeta(4) * zeta(4), int)


def test_mixed_orders_rejected():
    with pytest.raises(ValueError, match="incompatible"):
        zeta(3) + zeta(5)


def test_scalar_io_roundtrip():
    for x in [0, -3, Fraction(2, 7), zeta(4), zeta(3, 2) * Fraction(1, 2) + 1]:
        assert parse_scalar(scalar_to_str(x)) == x
    assert parse_scalar("3/6") == Fraction(1, 2)


@given(cyclo(5), cyclo(5), cyclo(5))
def test_cyclotomic_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@given(cyclo(12))
def test_cyclotomic_inverse(a):
    if a == 0:
        return
    assert a * (1 / a) == 1


def test_small_linear_algebra():
    m = Matrix([[1, 2], [2, 4]])
    _, r, piv = rref(m)
    assert r == 1 and piv == [0]
    k = kernel_basis(m)
    assert k.columns() == [(-2, 1)]
    assert solve(Matrix([[1, 1]]), Matrix([[2]])) == Matrix([[2], [0]])
    assert solve(Matrix([[0]]), Matrix([[1]])) is None
    with pytest.raises(ZeroDivisionError):
        inverse(m)


@given(matrices(3, 4))
def test_rank_nullity(m):
    assert rank(m) + kernel_basis(m).cols == m.cols
    assert (m @ kernel_basis(m)).is_zero()
    assert image_basis(m).cols == rank(m)


@given(matrices(3, 3), matrices(3, 2))
def test_solve_is_consistent(m, rhs):
    x = solve(m, rhs)
    if x is None:
        # inconsistent exactly when appending rhs raises the rank
        assert rank(Matrix.hstack([m, rhs])) > rank(m)
    else:
        assert m @ x == rhs


@given(matrices(3, 3))
def test_inverse(m):
    if rank(m) < 3:
        return
    assert m @ inverse(m) == Matrix.identity(3)


@given(matrices(4, 2), matrices(4, 3))
def test_extend_basis(span, cand):
    idx = extend_basis(span, cand)
    both = Matrix.hstack([span, cand])
    assert rank(Matrix.hstack([image_basis(span), cand.select_columns(idx)])) == rank(both)
    assert len(idx) == rank(both) - rank(span)


def test_cyclotomic_matrices():
    w = zeta(3)
    m = Matrix([[1, w], [w * w, 1]])
    assert rank(m) == 1  # second row is w^2 times the first
    m2 = Matrix([[1, w], [0, 1]])
    assert m2 @ inverse(m2) == Matrix.identity(2)


def test_kron_and_blocks():
    a = Matrix([[1, 2]])
    b = Matrix([[0], [3]])
    assert a.kron(b) == Matrix([[0, 0], [3, 6]])
    assert Matrix.block_diag([a, b]).shape == (3, 3)
    assert Matrix.block([[a, a]]).shape == (1, 4)
