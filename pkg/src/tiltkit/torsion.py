"""The classes ``X(P) = Ker Hom(-, H^-1(nu P))`` and ``Y(P) = Ker Hom(H^0 P, -)``.

``verify_torsion_pair`` decides whether they form a torsion pair on finite
dimensional modules: ``H^0 in X`` is a finite check, the empty intersection
is certified exactly when possible and otherwise up to an enumeration bound.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .complexes import (
    TwoTermComplex,
    cached_cohomology,
    hom_homotopy,
    indecomposable_summand_idempotents,
    k0_class,
    k0_spans,
)
from .modules import (
    CanonicalSequence,
    Representation,
    ext1,
    ext2,
    hom_dim,
    simple,
    socle,
    tensor_over_A,
    top,
    trace,
)
from .oracle import ModuleInventory, OracleError, enumerate_modules

VERIFIED, REFUTED, INCONCLUSIVE = "verified", "refuted", "inconclusive"


class PreconditionError(ValueError):
    pass


class ClassMembership:
    def __init__(self, P: TwoTermComplex):
        self.complex = P
        self.bundle = cached_cohomology(P)

    def in_X(self, M: Representation) -> bool:
        return M.is_zero() or hom_dim(M, self.bundle.Hminus1_nu) == 0

    def in_X_tensor(self, M: Representation) -> bool:
        """Same class through ``H1(P*) (x)_A M = 0``."""
        return M.is_zero() or tensor_over_A(self.bundle.H1dual, M).dim == 0

    def in_Y(self, M: Representation) -> bool:
        return M.is_zero() or hom_dim(self.bundle.H0, M) == 0


def in_X(P: TwoTermComplex, M: Representation) -> bool:
    return ClassMembership(P).in_X(M)


def in_Y(P: TwoTermComplex, M: Representation) -> bool:
    return ClassMembership(P).in_Y(M)


def canonical_sequence(P: TwoTermComplex, X: Representation) -> CanonicalSequence:
    return trace(cached_cohomology(P).H0, X)


@dataclass
class TorsionPairReport:
    verdict: str
    h0_in_X: bool
    intersection_zero: str  # certificate level, see verify_torsion_pair
    witness: Representation | None = None
    witness_kind: str = ""  # intersection | h0_not_in_X | canonical_sequence
    canonical_checked: int = 0
    canonical_failures: int = 0
    inventory_size: int = 0
    bound: tuple | None = None
    splitting: bool | None = None
    notes: list = dc_field(default_factory=list)

    def machine_lines(self, prefix: str = "torsion") -> dict:
        out = {
            f"{prefix}.verdict": self.verdict,
            f"{prefix}.h0_in_X": _b(self.h0_in_X),
            f"{prefix}.intersection_zero": self.intersection_zero,
            f"{prefix}.canonical_checks": str(self.canonical_checked),
            f"{prefix}.canonical_failures": str(self.canonical_failures),
            f"{prefix}.inventory_size": str(self.inventory_size),
            f"{prefix}.bound": ",".join(map(str, self.bound)) if self.bound else "none",
            f"{prefix}.splitting": "unchecked" if self.splitting is None else _b(self.splitting),
            f"{prefix}.witness": _dims(self.witness) if self.witness is not None else "none",
            f"{prefix}.witness_kind": self.witness_kind or "none",
        }
        return out


def _b(x: bool) -> str:
    return "true" if x else "false"


def _dims(M) -> str:
    return "dimvec(" + ",".join(map(str, M.dims)) + ")"


def _exact_intersection_certificate(P: TwoTermComplex, seed: int = 0) -> str | None:
    """An exact reason for ``X cap Y = 0``, or None."""
    bundle = cached_cohomology(P)
    n = P.algebra.n
    if all(top(bundle.H0).dims[v] for v in range(n)):
        return "exact-Y-zero"
    if all(socle(bundle.Hminus1_nu).dims[v] for v in range(n)):
        return "exact-X-zero"
    if hom_homotopy(P, P, 1).dim == 0:
        classes = [k0_class(P, e) for e in indecomposable_summand_idempotents(P, seed)]
        if k0_spans(classes, n):
            return "exact-K0"
    return None


def verify_torsion_pair(
    P: TwoTermComplex,
    bound=None,
    inventory: ModuleInventory | None = None,
    seed: int = 0,
    use_oracle: bool = True,
) -> TorsionPairReport:
    """Check that ``(X_c, Y_c)`` is a torsion pair for finite dimensional modules.

    ``intersection_zero`` is one of ``exact-Y-zero``, ``exact-X-zero``,
    ``exact-K0`` (presilting with a K0 basis of summand classes), ``bounded``
    (no witness up to the bound), ``refuted`` or ``unknown``.
    """
    cm = ClassMembership(P)
    b = cm.bundle
    h0_ok = cm.in_X(b.H0)
    exact = _exact_intersection_certificate(P, seed)
    report = TorsionPairReport(INCONCLUSIVE, h0_ok, exact or "unknown")
    if not h0_ok:
        report.verdict = REFUTED
        report.witness = b.H0
        report.witness_kind = "h0_not_in_X"
        return report

    for j in range(1, P.algebra.n + 1):
        S = simple(P.algebra, j)
        if cm.in_X(S) and cm.in_Y(S):
            report.verdict = REFUTED
            report.intersection_zero = "refuted"
            report.witness = S
            report.witness_kind = "intersection"
            return report

    if inventory is None and use_oracle and P.algebra.field.is_finite:
        inventory = enumerate_modules(P.algebra, bound)
    if inventory is None:
        if exact:
            report.verdict = VERIFIED
        else:
            report.notes.append("no enumeration over this field; intersection left open")
        return report

    report.bound = inventory.bound
    report.inventory_size = len(inventory)
    flags = inventory.classify(P)
    for M, fl in zip(inventory.representatives, flags):
        if not M.is_zero() and fl["in_X"] and fl["in_Y"]:
            report.verdict = REFUTED
            report.intersection_zero = "refuted"
            report.witness = M
            report.witness_kind = "intersection"
            if exact:
                raise AssertionError(f"exact certificate {exact} contradicted by an enumerated witness")
            return report
    if not exact:
        report.intersection_zero = "bounded"
    for M in inventory.representatives:
        if M.is_zero():
            continue
        seq = trace(b.H0, M)
        report.canonical_checked += 1
        if not (cm.in_X(seq.tau) and cm.in_Y(seq.pi)):
            report.canonical_failures += 1
            if report.witness is None:
                report.witness = M
                report.witness_kind = "canonical_sequence"
    report.verdict = REFUTED if report.canonical_failures else VERIFIED
    return report


# ---------------------------------------------------------------- Ext-projective / injective


@dataclass
class CheckResult:
    ok: bool
    violation: object = None

    def __bool__(self):
        return self.ok


def ext_projective_check(P: TwoTermComplex, sample) -> CheckResult:
    """``Ext^1(H^0, M) = 0`` for every sampled ``M`` in ``X_c``."""
    cm = ClassMembership(P)
    for M in sample:
        if cm.in_X(M) and ext1(cm.bundle.H0, M):
            return CheckResult(False, M)
    return CheckResult(True)


def ext_injective_check(P: TwoTermComplex, sample) -> CheckResult:
    """``Ext^1(N, H^-1(nu P)) = 0`` for every sampled ``N`` in ``Y_c``."""
    cm = ClassMembership(P)
    for N in sample:
        if cm.in_Y(N) and ext1(N, cm.bundle.Hminus1_nu):
            return CheckResult(False, N)
    return CheckResult(True)


def is_splitting(P: TwoTermComplex, sample, verdict=None) -> CheckResult:
    """``Ext^2(X, Y) = 0`` over sampled ``X in X_c``, ``Y in Y_c``.

    ``sample`` is a list of modules (all pairs are formed) or an inventory.
    Requires a tilting complex; pass a precomputed verdict to skip recomputing it.
    """
    if verdict is None:
        from .tilting import is_tilting

        verdict = is_tilting(P, use_oracle=False)
    if verdict.overall != VERIFIED:
        raise PreconditionError("splitting is only defined here for a tilting complex")
    mods = sample.representatives if isinstance(sample, ModuleInventory) else list(sample)
    cm = ClassMembership(P)
    xs = [M for M in mods if not M.is_zero() and cm.in_X(M)]
    ys = [M for M in mods if not M.is_zero() and cm.in_Y(M)]
    for X in xs:
        for Y in ys:
            if ext2(X, Y):
                return CheckResult(False, (X, Y))
    return CheckResult(True)


__all__ = [
    "ClassMembership",
    "TorsionPairReport",
    "CheckResult",
    "PreconditionError",
    "in_X",
    "in_Y",
    "canonical_sequence",
    "verify_torsion_pair",
    "ext_projective_check",
    "ext_injective_check",
    "is_splitting",
    "OracleError",
]
