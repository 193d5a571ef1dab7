from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tiltkit.linalg import GF, QQ, FieldMismatch, Matrix, Subspace, hstack, nullspace_basis, rref, solve


def test_rref_identity():
    rk, red, piv = rref(Matrix.identity(QQ, 3))
    assert rk == 3 and piv == (0, 1, 2)
    assert red == Matrix.identity(QQ, 3)


def test_rref_zero():
    rk, _, piv = rref(Matrix.zero(QQ, 2, 5))
    assert rk == 0 and piv == ()


def test_rref_rank_one():
    assert rref(Matrix.from_rows(QQ, [[1, 2], [2, 4]]))[0] == 1


def test_nullspace_examples():
    assert nullspace_basis(Matrix.identity(QQ, 4)) == []
    assert len(nullspace_basis(Matrix.zero(QQ, 3, 2))) == 2
    assert nullspace_basis(Matrix.from_rows(GF(2), [[1, 1]])) == [(1, 1)]


def test_solve_examples():
    assert solve(Matrix.identity(QQ, 2), [3, Fraction(1, 7)]) == (3, Fraction(1, 7))
    assert solve(Matrix.zero(QQ, 2, 2), [1, 0]) is None
    assert solve(Matrix.from_rows(QQ, [[2]]), [1]) == (Fraction(1, 2),)
    with pytest.raises(ValueError):
        solve(Matrix.identity(QQ, 2), [1])


def test_empty_shapes():
    m = Matrix.zero(QQ, 0, 3)
    assert rref(m)[0] == 0
    assert len(nullspace_basis(m)) == 3
    n = Matrix.zero(QQ, 3, 0)
    assert nullspace_basis(n) == []
    assert (n @ Matrix.zero(QQ, 0, 2)).shape == (3, 2)


def test_field_invariants():
    F = GF(5)
    assert F(-1) == 4 and F(Fraction(1, 2)) == 3
    x = QQ(Fraction(4, -6))
    assert x.denominator == 3 and x.numerator == -2
    with pytest.raises(ValueError):
        GF(6)


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatch):
        Matrix.identity(QQ, 2) + Matrix.identity(GF(2), 2)


def test_subspace_coordinates():
    W = Subspace(QQ, 3, [(1, 1, 0), (0, 1, 1)])
    assert W.dim == 2 and W.codim == 1
    assert W.contains((1, 2, 1)) and not W.contains((1, 0, 0))


FIELDS = st.sampled_from([QQ, GF(2), GF(3), GF(7)])


@st.composite
def matrices(draw):
    F = draw(FIELDS)
    r = draw(st.integers(0, 5))
    c = draw(st.integers(0, 5))
    vals = draw(st.lists(st.integers(-3, 3), min_size=r * c, max_size=r * c))
    return Matrix(F, r, c, [vals[i * c:(i + 1) * c] for i in range(r)])


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_nullity_and_kernel(m):
    basis = nullspace_basis(m)
    assert m.rank() + len(basis) == m.ncols
    for v in basis:
        assert not any(m.apply(v))
    if basis:
        assert Matrix.from_columns(m.field, basis, m.ncols).rank() == len(basis)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rref_idempotent(m):
    _, red, piv = rref(m)
    _, red2, piv2 = rref(red)
    assert red2 == red and piv2 == piv


@settings(max_examples=100, deadline=None)
@given(matrices(), st.data())
def test_solve_consistency(m, data):
    x = data.draw(st.lists(st.integers(-2, 2), min_size=m.ncols, max_size=m.ncols))
    b = m.apply([m.field(v) for v in x])
    y = solve(m, b)
    assert y is not None and m.apply(y) == b
    aug = hstack([m, Matrix.from_columns(m.field, [b], m.nrows)]) if m.nrows else m
    assert aug.rank() == m.rank()
