import pytest

from tiltkit.linalg import GF, QQ
from tiltkit.modules import (
    dualize,
    hom_dim,
    injective,
    is_isomorphic,
    nakayama_projective,
    projective,
    regular_module,
    simple,
)
from tiltkit.quiver import Quiver, build_algebra, parse_linear_combination, parse_path


def test_dimensions(kdoc, A2, E):
    assert kdoc.algebra.dim == 1
    assert A2.dim == 3
    assert [p.label(A2.quiver) for p in A2.basis] == ["e1", "e2", "alpha"]
    assert E.dim == 8
    labels = {p.label(E.quiver) for p in E.basis}
    assert labels == {"e1", "e2", "e3", "e4", "alpha", "beta", "gamma", "delta"}


def test_composition_is_function_style(E):
    q = E.quiver
    p = parse_path(q, "beta*alpha")
    assert (p.source, p.target) == (1, 3)
    assert not any(E.path_vector(p))
    with pytest.raises(ValueError):
        parse_path(q, "alpha*beta")


def test_opposite(A2, E, kdoc):
    op = A2.opposite()
    assert op.dim == 3 and op.quiver.arrows == (("alpha", 2, 1),)
    assert op.opposite() is A2
    assert E.opposite().dim == 8
    assert kdoc.algebra.opposite().dim == 1


def test_associative(A2, E, a3):
    for A in (A2, E, a3.algebra, A2.opposite()):
        assert A.check_associative()


def test_unit_and_corners(E):
    one = E.one()
    x = E.parse_element("gamma + alpha")
    assert E.mul(one, x) == x == E.mul(x, one)
    for p in E.basis:
        v = E.path_vector(p)
        assert E.mul(E.mul(E.idempotent(p.target), v), E.idempotent(p.source)) == v


def test_module_families(A2, E, kdoc):
    K = kdoc.algebra
    assert projective(K, 1).dims == injective(K, 1).dims == simple(K, 1).dims == (1,)
    assert sum(projective(A2, 1).dims) == 2 and sum(projective(A2, 2).dims) == 1
    assert sum(injective(A2, 2).dims) == 2 and sum(injective(A2, 1).dims) == 1
    assert all(sum(projective(E, i).dims) == 2 for i in range(1, 5))
    assert sum(sum(projective(E, i).dims) for i in range(1, 5)) == E.dim
    with pytest.raises(IndexError):
        simple(E, 5)


def test_nakayama_projective(A2, E, kdoc):
    assert sum(nakayama_projective(kdoc.algebra, 1).dims) == 1
    assert sum(nakayama_projective(A2, 1).dims) == 1
    assert sum(nakayama_projective(E, 1).dims) == 2
    assert is_isomorphic(nakayama_projective(E, 1), injective(E, 1))


def test_duality(A2, E):
    S = dualize(simple(A2, 1))
    assert S.algebra is A2.opposite() and S.dims == (1, 0)
    D = dualize(projective(A2, 1))
    assert is_isomorphic(D, injective(A2.opposite(), 1))
    assert sum(dualize(regular_module(E)).dims) == 8
    for M in (projective(E, 2), injective(E, 3), simple(E, 4), regular_module(E)):
        assert is_isomorphic(dualize(dualize(M)), M)


def test_yoneda(E, A2):
    for A in (E, A2):
        M = regular_module(A)
        for i in range(1, A.n + 1):
            assert hom_dim(projective(A, i), M) == M.dims[i - 1]


def test_infinite_dimensional_detected():
    q = Quiver(1, (("x", 1, 1),))
    with pytest.raises(ValueError, match="infinite"):
        build_algebra(q, [], QQ, max_length=6)
    A = build_algebra(q, [parse_linear_combination(q, QQ, "x*x*x")], QQ)
    assert A.dim == 3


def test_commutativity_relation_over_f3():
    q = Quiver(4, (("a", 1, 2), ("b", 2, 4), ("c", 1, 3), ("d", 3, 4)))
    A = build_algebra(q, [parse_linear_combination(q, GF(3), "b*a + 2*d*c")], GF(3))
    assert A.dim == 4 + 4 + 1
    assert A.check_associative()
    assert A.parse_element("b*a") == A.parse_element("d*c")


def test_non_admissible_relation_rejected():
    q = Quiver(3, (("a", 1, 2), ("b", 2, 3), ("c", 1, 3)))
    with pytest.raises(ValueError, match="admissible"):
        build_algebra(q, [parse_linear_combination(q, GF(3), "b*a + 2*c")], GF(3))
