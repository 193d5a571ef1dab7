import pytest

from tiltkit.algfile import load_fixture
from tiltkit.linalg import GF
from tiltkit.modules import is_isomorphic, simple
from tiltkit.oracle import (
    OracleError,
    candidate_count,
    enumerate_modules,
    regular_bound,
    search_intersection,
)


def test_field_k(kdoc):
    A = load_fixture("k.alg", GF(2)).algebra
    inv = enumerate_modules(A, (1,))
    assert len(inv) == 2
    assert enumerate_modules(A, (3,)).representatives[-1].dims == (3,)


def test_a2_counts(a2f2):
    A = a2f2.algebra
    assert len(enumerate_modules(A, (1, 1))) == 5
    assert candidate_count(A, (1, 1)) == 5
    # a S1 + b S2 + c P1 with a + c <= 2 and b + c <= 2
    assert len(enumerate_modules(A, (2, 2))) == 14


@pytest.mark.parametrize("p", [2, 3])
def test_kronecker_counts_depend_on_field(p):
    A = load_fixture("kronecker.alg", GF(p)).algebra
    # 0, S1, S2, S1+S2 and one indecomposable per point of the projective line
    assert len(enumerate_modules(A, (1, 1))) == 4 + p + 1


def test_example_inventory(E):
    inv = enumerate_modules(E, (1, 1, 1, 1))
    for i in range(1, 5):
        assert sum(is_isomorphic(M, simple(E, i)) for M in inv.representatives) == 1
    for M in inv.representatives:
        assert all(M.relation_matrix(rel).is_zero() for rel in E.relations)


def test_representatives_pairwise_distinct(E):
    reps = enumerate_modules(E, (1, 1, 1, 1)).nonzero()
    for i, M in enumerate(reps):
        for N in reps[i + 1:]:
            assert not is_isomorphic(M, N)


def test_indecomposables(a2f2):
    inv = enumerate_modules(a2f2.algebra, (1, 1))
    assert sorted(M.dims for M in inv.indecomposables()) == [(0, 1), (1, 0), (1, 1)]


def test_regular_bound(E, A2):
    assert regular_bound(E) == (2, 2, 2, 2)
    assert regular_bound(A2) == (1, 2)


def test_budget(monkeypatch, E):
    with pytest.raises(OracleError, match="budget"):
        enumerate_modules(E, (2, 2, 2, 2), budget=100)
    monkeypatch.setenv("TILT_BUDGET", "50")
    with pytest.raises(OracleError):
        enumerate_modules(E, (2, 2, 2, 2))
    monkeypatch.setenv("TILT_BUDGET", "lots")
    with pytest.raises(OracleError, match="not a number"):
        enumerate_modules(E, (1, 1, 1, 1))


def test_rational_field_rejected(A2):
    with pytest.raises(OracleError):
        enumerate_modules(A2, (1, 1))


def test_bad_bound_length(E):
    with pytest.raises(OracleError):
        enumerate_modules(E, (1, 1))


def test_search_intersection(a2f2, ex310):
    inv = enumerate_modules(a2f2.algebra, (1, 1))
    M = search_intersection(a2f2.complex("CONE"), inv)
    assert M is not None and not M.is_zero()
    assert search_intersection(a2f2.complex("TILT"), inv) is None
    inv = enumerate_modules(ex310.algebra, (1, 1, 1, 1))
    assert search_intersection(ex310.complex("P"), inv) is None
