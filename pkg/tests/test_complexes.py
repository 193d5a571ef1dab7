import random

import pytest

from conftest import free
from identities import hom_d_ranks, homological_identities, random_complex, random_module
from tiltkit.complexes import (
    TwoTermComplex,
    a_dual,
    add_equal,
    cohomology,
    direct_sum_complexes,
    endomorphism_algebra,
    hom_homotopy,
    indecomposable_summand_idempotents,
    is_contractible,
    k0_class,
    k0_spans,
    nakayama_complex,
)
from tiltkit.modules import (
    direct_sum,
    injective,
    is_isomorphic,
    min_proj_presentation,
    projective,
    regular_module,
    simple,
)


def test_cohomology_of_example(P310, E):
    b = cohomology(P310)
    assert b.H0.dims == (1, 0, 1, 0)
    assert is_isomorphic(b.H0, direct_sum([simple(E, 1), simple(E, 3)]))
    assert b.Hminus1.dims == (2, 1, 2, 1)
    parts = [simple(E, 3), projective(E, 2), simple(E, 1), projective(E, 4)]
    assert is_isomorphic(b.Hminus1, direct_sum(parts))
    assert b.H1dual.dims == b.Hminus1_nu.dims == (1, 2, 1, 2)


def test_cohomology_of_stalks(A2):
    b = cohomology(free(A2))
    assert b.H0.dims == regular_module(A2).dims
    assert b.Hminus1.is_zero() and b.H1dual.is_zero() and b.Hminus1_nu.is_zero()
    shifted = TwoTermComplex(A2, (1, 2), (), [[], []])
    b = cohomology(shifted)
    assert b.H0.is_zero() and b.Hminus1.dims == regular_module(A2).dims == (1, 2)
    assert b.H1dual.dims == regular_module(A2.opposite()).dims


def test_a_dual_twice(P310, a2):
    for P in (P310, a2.complex("TILT")):
        dd = a_dual(a_dual(P))
        assert dd.algebra is P.algebra
        assert (dd.rows, dd.cols) == (P.rows, P.cols) and dd.matrix == P.matrix


def test_nakayama_complex_terms(A2, E):
    P = TwoTermComplex.stalk(A2, (1,))
    nu = nakayama_complex(P)
    assert nu.first.is_zero() and is_isomorphic(nu.second, injective(A2, 1))
    nu = nakayama_complex(TwoTermComplex.stalk(E, (2,)))
    assert is_isomorphic(nu.second, injective(E, 2))


def test_hom_homotopy_of_example(P310):
    assert hom_homotopy(P310, P310, 0).dim == 6
    assert hom_homotopy(P310, P310, 1).dim == 0
    assert hom_homotopy(P310, P310, -1).dim == 4


def test_hom_homotopy_to_modules(A2):
    P = TwoTermComplex.stalk(A2, (1,))
    assert hom_homotopy(P, simple(A2, 1), 0).dim == 1
    assert hom_homotopy(P, simple(A2, 1), 1).dim == 0
    cone = TwoTermComplex(A2, (1,), (1,), [[A2.idempotent(1)]])
    assert all(hom_homotopy(cone, M, s).dim == 0 for M in (simple(A2, 1), projective(A2, 1)) for s in (0, 1))


def test_endomorphism_dims(a2, P310, kdoc):
    assert endomorphism_algebra(a2.complex("TILT")).dim == 3
    assert endomorphism_algebra(a2.complex("FREE")).dim == 3
    assert endomorphism_algebra(P310).dim == 6
    assert endomorphism_algebra(kdoc.complex("P")).dim == 1
    E = endomorphism_algebra(a2.complex("TILT"))
    assert E.check_bimodule()
    B = E.algebra
    one = B.unit
    for i in range(B.dim):
        x = B.basis_vector(i)
        assert B.mul(one, x) == x == B.mul(x, one)


def test_contractible(a2, P310):
    assert is_contractible(a2.complex("CONE"))
    assert not is_contractible(P310)


def test_min_presentation_recovers_module(E):
    for M in (simple(E, 1), injective(E, 3), regular_module(E)):
        p = min_proj_presentation(M)
        assert is_isomorphic(cohomology(p).H0, M)


def test_add_equal(a2, P310, ex310):
    T = a2.complex("TILT")
    assert add_equal(T, direct_sum_complexes([T, T]))
    assert not add_equal(T, a2.complex("FREE"))
    assert add_equal(T, direct_sum_complexes([T, a2.complex("CONE")]))
    assert not add_equal(P310, ex310.complex("SHIFT"))


def test_k0_classes(P310, a2, ex310):
    assert k0_class(P310) == (1, -2, 1, -2)
    assert k0_class(a2.complex("TILT")) == (2, -1)
    assert k0_class(ex310.complex("SHIFT")) == (-1, -1, -1, -1)
    parts = [k0_class(P310, e) for e in indecomposable_summand_idempotents(P310)]
    assert len(parts) == 4
    assert tuple(map(sum, zip(*parts))) == (1, -2, 1, -2)


def test_k0_spans():
    assert k0_spans([(1, 0), (1, 1)], 2)
    assert not k0_spans([(2, 0), (0, 1)], 2)
    assert not k0_spans([(1, 0)], 2)
    assert k0_spans([], 0)


def test_direct_sum_needs_same_algebra(A2, E):
    with pytest.raises(ValueError):
        direct_sum_complexes([free(A2), free(E)])


def test_hom_d_by_precomposition(P310, E):
    for M in (simple(E, 1), simple(E, 2), regular_module(E)):
        k, c = hom_d_ranks(P310, M)
        assert k == hom_homotopy(P310, M, 0).dim
        assert c == hom_homotopy(P310, M, 1).dim


@pytest.mark.parametrize("name", ["P", "FREE", "SHIFT"])
def test_homological_identities_on_fixtures(ex310, name):
    P = ex310.complex(name)
    A = ex310.algebra
    for M in [simple(A, i) for i in range(1, 5)] + [regular_module(A), injective(A, 2)]:
        bad = [k for k, ok in homological_identities(P, M).items() if not ok]
        assert not bad, bad


def test_homological_identities_random(A2, a3):
    rng = random.Random(7)
    for A in (A2, a3.algebra):
        for _ in range(15):
            P, M = random_complex(A, rng), random_module(A, rng)
            bad = [k for k, ok in homological_identities(P, M).items() if not ok]
            assert not bad, (P.rows, P.cols, bad)
