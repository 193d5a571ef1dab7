import pytest

from conftest import free
from tiltkit.modules import (
    cokernel,
    direct_sum,
    hom_space,
    image,
    injective,
    is_isomorphic,
    kernel,
    projective,
    regular_module,
    simple,
)
from tiltkit.oracle import enumerate_modules
from tiltkit.torsion import (
    ClassMembership,
    PreconditionError,
    canonical_sequence,
    ext_injective_check,
    ext_projective_check,
    in_X,
    in_Y,
    is_splitting,
    verify_torsion_pair,
)


def test_membership_in_example(P310, E):
    assert in_X(P310, simple(E, 1)) and in_X(P310, simple(E, 3))
    assert not in_X(P310, projective(E, 2))
    assert in_Y(P310, simple(E, 2)) and in_Y(P310, simple(E, 4))
    assert not in_Y(P310, simple(E, 1))


def test_zero_module_in_both(P310, E):
    Z = kernel(hom_space(simple(E, 1), simple(E, 1))[0])[0]
    assert Z.is_zero() and in_X(P310, Z) and in_Y(P310, Z)


def test_canonical_sequence_of_projective(P310, E):
    seq = canonical_sequence(P310, projective(E, 2))
    assert is_isomorphic(seq.tau, simple(E, 3))
    assert is_isomorphic(seq.pi, simple(E, 2))
    assert in_X(P310, seq.tau) and in_Y(P310, seq.pi)


def test_free_complex_classes(A2):
    P = free(A2)
    for M in (simple(A2, 1), simple(A2, 2), projective(A2, 1), injective(A2, 2)):
        assert in_X(P, M) and not in_Y(P, M)
    assert verify_torsion_pair(P).verdict == "verified"


def test_verify_example(P310):
    rep = verify_torsion_pair(P310, bound=(1, 1, 1, 1))
    assert rep.verdict == "verified"
    assert rep.intersection_zero == "exact-K0"
    assert rep.canonical_failures == 0 and rep.canonical_checked > 0


def test_verify_refuted_cone_like(a2):
    rep = verify_torsion_pair(a2.complex("CONE"))
    assert rep.verdict == "refuted"
    assert rep.witness is not None and rep.witness_kind


def test_verify_without_oracle_over_q(a2):
    rep = verify_torsion_pair(a2.complex("TILT"))
    assert rep.verdict == "verified" and rep.intersection_zero.startswith("exact")
    lines = rep.machine_lines()
    assert lines["torsion.verdict"] == "verified"


def test_ext_checks(P310, E, a2):
    sample = [simple(E, i) for i in range(1, 5)] + [projective(E, i) for i in range(1, 5)]
    assert ext_projective_check(P310, sample)
    assert ext_injective_check(P310, sample)
    T = a2.complex("TILT")
    A = T.algebra
    sample = [simple(A, 1), simple(A, 2), projective(A, 1)]
    assert ext_projective_check(T, sample) and ext_injective_check(T, sample)


def test_splitting(a2, P310, E):
    T = a2.complex("TILT")
    A = T.algebra
    assert is_splitting(T, [simple(A, 1), simple(A, 2), projective(A, 1)])
    with pytest.raises(PreconditionError):
        is_splitting(P310, [simple(E, 1)])


def test_tensor_and_hom_criteria_agree(P310, E):
    cm = ClassMembership(P310)
    for M in enumerate_modules(E, (1, 1, 1, 1)).representatives:
        assert cm.in_X(M) == cm.in_X_tensor(M)


@pytest.mark.parametrize("which", ["P310", "a2f2"])
def test_closure_properties(which, request):
    doc = request.getfixturevalue(which)
    P = doc if which == "P310" else doc.complex("TILT")
    A = P.algebra
    bound = (1, 1, 1, 1) if A.n == 4 else (2, 2)
    mods = [M for M in enumerate_modules(A, bound).representatives if not M.is_zero()]
    cm = ClassMembership(P)
    for N in mods:
        for M in mods:
            for f in hom_space(N, M):
                if cm.in_X(N):
                    # quotients of torsion modules stay torsion
                    assert cm.in_X(image(f)[0])
                if cm.in_X(M) and cm.in_X(N):
                    assert cm.in_X(cokernel(f)[0])
                if cm.in_Y(M):
                    assert cm.in_Y(image(f)[0])
                if cm.in_Y(N):
                    assert cm.in_Y(kernel(f)[0])
    xs = [M for M in mods if cm.in_X(M)]
    if len(xs) > 1:
        assert cm.in_X(direct_sum(xs[:2]))


def test_regular_module_splits_canonically(P310, E):
    seq = canonical_sequence(P310, regular_module(E))
    assert sum(seq.tau.dims) + sum(seq.pi.dims) == 8
    assert in_X(P310, seq.tau) and in_Y(P310, seq.pi)
