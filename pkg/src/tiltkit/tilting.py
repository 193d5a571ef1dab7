"""Tilting verdicts, the construction from torsion data, and the B-side functors.

B-modules are left modules over ``B = End_K(P)^op`` given by one action
matrix per basis element of B.  The four functors are

* ``Hom_A(H0, -)`` from ``X_c`` and ``H0 (x)_B -`` back,
* ``H1(P*) (x)_A -`` from ``Y_c`` and ``Hom_B(H1(P*), -)`` back.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .complexes import (
    EndoAlgebra,
    TwoTermComplex,
    cached_cohomology,
    direct_sum_complexes,
    endomorphism_algebra,
    hom_homotopy,
    indecomposable_summand_idempotents,
    k0_class,
    k0_spans,
    nakayama_complex,
)
from .linalg import Matrix, nullspace_basis
from .modules import (
    Representation,
    cokernel,
    ext1,
    hom_dim,
    hom_space,
    identity_map,
    indecomposable_summands,
    injective,
    is_cogenerated_by,
    is_generated_by,
    is_isomorphic,
    kron,
    min_inj_presentation,
    min_proj_presentation,
    projective,
    quotient,
    simple,
    tensor_induced,
    tensor_over_A,
    trace,
)
from .oracle import ModuleInventory, enumerate_modules
from .structalg import BasisCoords, FDAlgebra
from .torsion import (
    INCONCLUSIVE,
    REFUTED,
    VERIFIED,
    ClassMembership,
    PreconditionError,
    TorsionPairReport,
    verify_torsion_pair,
)


class InconsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""


class MembershipError(ValueError):
    pass


@dataclass
class TiltingVerdict:
    presilting_up: bool
    presilting_down: bool
    h0_in_X: bool
    hminus1_in_Y: bool
    generation: str
    overall: str
    cross_checks: dict = dc_field(default_factory=dict)
    k0_classes: list = dc_field(default_factory=list)
    summand_count: int = 0
    torsion: TorsionPairReport | None = None

    def machine_lines(self, prefix: str = "tilting") -> dict:
        b = lambda x: "true" if x else "false"
        out = {
            f"{prefix}.verdict": self.overall,
            f"{prefix}.presilting_up": b(self.presilting_up),
            f"{prefix}.presilting_down": b(self.presilting_down),
            f"{prefix}.h0_in_X": b(self.h0_in_X),
            f"{prefix}.hminus1_in_Y": b(self.hminus1_in_Y),
            f"{prefix}.generation": self.generation,
            f"{prefix}.summand_count": str(self.summand_count),
            f"{prefix}.k0_classes": ";".join("(" + ",".join(map(str, c)) + ")" for c in self.k0_classes) or "none",
        }
        for k, v in sorted(self.cross_checks.items()):
            out[f"{prefix}.cross_check.{k}"] = b(v)
        return out


def is_tilting(
    P: TwoTermComplex,
    bound=None,
    inventory: ModuleInventory | None = None,
    seed: int = 0,
    use_oracle: bool = True,
) -> TiltingVerdict:
    bundle = cached_cohomology(P)
    up = hom_homotopy(P, P, 1).dim == 0
    down = hom_homotopy(P, P, -1).dim == 0
    h0_x = hom_dim(bundle.H0, bundle.Hminus1_nu) == 0
    hm1_y = hom_dim(bundle.H0, bundle.Hminus1) == 0
    checks = {"h0_in_X_vs_hom_shift_1": up == h0_x, "hminus1_in_Y_vs_hom_shift_-1": down == hm1_y}
    if not all(checks.values()):
        raise InconsistencyError(f"module-level and homotopy-level conditions disagree: {checks}")
    idem = indecomposable_summand_idempotents(P, seed)
    classes = [k0_class(P, e) for e in idem]
    E = endomorphism_algebra(P)
    iso_classes = []
    for e in idem:
        if not any(E.algebra.are_isomorphic_idempotents(e, f) for f in iso_classes):
            iso_classes.append(e)
    n = P.algebra.n
    k0_ok = up and k0_spans(classes, n)
    checks["k0_total_class"] = _vec_sum(classes, n) == k0_class(P)
    tors = None
    if use_oracle or not k0_ok:
        tors = verify_torsion_pair(P, bound, inventory, seed, use_oracle)
    if k0_ok:
        generation = "K0-exact"
    elif tors is not None and tors.intersection_zero in ("exact-Y-zero", "exact-X-zero"):
        generation = "exact-class-zero"
    elif tors is not None and tors.intersection_zero == "bounded":
        generation = "oracle-bounded"
    elif tors is not None and tors.intersection_zero == "refuted":
        generation = "refuted"
    elif len(iso_classes) == n:
        generation = "heuristic-summand-count"
    else:
        generation = "none"
    if tors is not None and tors.verdict == VERIFIED and k0_ok:
        checks["oracle_agrees_with_k0"] = True
    if not (up and down) or generation == "refuted":
        overall = REFUTED
    elif generation in ("K0-exact", "exact-class-zero", "oracle-bounded"):
        overall = VERIFIED
    else:
        overall = INCONCLUSIVE
    return TiltingVerdict(up, down, h0_x, hm1_y, generation, overall, checks, classes, len(iso_classes), tors)


def _vec_sum(classes, n):
    return tuple(sum(c[j] for c in classes) for j in range(n))


# ---------------------------------------------------------------- construction


@dataclass
class TorsionInput:
    X_generator: Representation
    Y_cogenerator: Representation


@dataclass
class ConstructionResult:
    complex: TwoTermComplex
    verdict: TiltingVerdict | None
    classes_agree: bool | None
    universe: str  # "inventory" or "sample"
    universe_size: int
    warnings: list = dc_field(default_factory=list)


def standard_sample(A, extra=()) -> list:
    mods = []
    for v in range(1, A.n + 1):
        mods.extend([simple(A, v), projective(A, v), injective(A, v)])
    for M in extra:
        if not M.is_zero():
            mods.extend(indecomposable_summands(M))
    return mods


def nakayama_of_module(X: Representation) -> Representation:
    """``DA (x)_A X`` as the cokernel of the Nakayama image of a minimal presentation."""
    pres = min_proj_presentation(X)
    return cokernel(nakayama_complex(pres).d)[0]


def check_torsion_input(t: TorsionInput, universe) -> None:
    """Raise PreconditionError naming the first violating module."""
    X, Y = t.X_generator, t.Y_cogenerator
    A = X.algebra
    if Y.algebra is not A:
        raise PreconditionError("generator and cogenerator live over different algebras")
    if not X.is_zero() and not Y.is_zero() and hom_dim(X, Y):
        raise PreconditionError(f"Hom(X_gen, Y_cogen) is nonzero; {_label(X)} is not torsion for {_label(Y)}")
    nuX = nakayama_of_module(X) if not X.is_zero() else X
    if not nuX.is_zero() and (X.is_zero() or not is_generated_by(nuX, X)):
        raise PreconditionError(f"Gen(X_gen) is not stable under DA (x) -: violating module {_label(nuX)}")
    for M in universe:
        if M.is_zero():
            continue
        tau = trace(X, M) if not X.is_zero() else None
        pi = tau.pi if tau is not None else M
        if not (pi.is_zero() or (not Y.is_zero() and is_cogenerated_by(pi, Y))):
            raise PreconditionError(
                f"(Gen X_gen, Cogen Y_cogen) is not a torsion pair: violating module {_label(M)}"
            )
        gen = tau is not None and tau.pi.is_zero()
        if gen and ext1(X, M):
            raise PreconditionError(f"X_gen is not Ext-projective: Ext^1(X_gen, {_label(M)}) != 0")
        if not Y.is_zero() and is_cogenerated_by(M, Y) and ext1(M, Y):
            raise PreconditionError(f"Y_cogen is not Ext-injective: Ext^1({_label(M)}, Y_cogen) != 0")


def _label(M: Representation) -> str:
    dims = ",".join(map(str, M.dims))
    return f"{M.name} dimvec({dims})" if M.name else f"dimvec({dims})"


def construct_from_torsion(
    t: TorsionInput,
    inventory: ModuleInventory | None = None,
    bound=None,
    verify: bool = True,
    seed: int = 0,
) -> ConstructionResult:
    """Minimal presentation of ``X_gen`` plus ``Hom(DA, -)`` of the minimal injective presentation of ``Y_cogen``, shifted."""
    A = t.X_generator.algebra
    warnings = []
    if inventory is None and A.field.is_finite:
        inventory = enumerate_modules(A, bound)
    if inventory is not None:
        universe = inventory.representatives
        kind = "inventory"
        warnings.append(f"preconditions checked on all modules up to {inventory.bound}")
    else:
        universe = standard_sample(A, (t.X_generator, t.Y_cogenerator))
        kind = "sample"
        warnings.append("preconditions checked on simples, projectives, injectives and the given summands only")
    check_torsion_input(t, universe)

    parts = []
    if not t.X_generator.is_zero():
        parts.append(min_proj_presentation(t.X_generator))
    if not t.Y_cogenerator.is_zero():
        parts.append(min_inj_presentation(t.Y_cogenerator).inverse_nakayama())
    if not parts:
        raise PreconditionError("both generator and cogenerator are zero")
    P = direct_sum_complexes(parts, name="P")
    result = ConstructionResult(P, None, None, kind, len(universe), warnings)
    if verify:
        result.verdict = is_tilting(P, inventory=inventory, seed=seed, use_oracle=inventory is not None)
        cm = ClassMembership(P)
        agree = True
        for M in universe:
            gen = t.X_generator.is_zero() and M.is_zero() or (
                not t.X_generator.is_zero() and is_generated_by(M, t.X_generator)
            )
            cogen = M.is_zero() or (not t.Y_cogenerator.is_zero() and is_cogenerated_by(M, t.Y_cogenerator))
            if gen != cm.in_X(M) or cogen != cm.in_Y(M):
                agree = False
                break
        result.classes_agree = agree
    return result


# ---------------------------------------------------------------- B-modules


class BBModule:
    """Left module over an :class:`FDAlgebra`: ``actions[k]`` is the action of basis element ``k``."""

    def __init__(self, algebra: FDAlgebra, dim: int, actions):
        self.algebra = algebra
        self.dim = dim
        self.actions = list(actions)
        if len(self.actions) != algebra.dim:
            raise ValueError("one action matrix per basis element is required")

    def act(self, x) -> Matrix:
        F = self.algebra.field
        out = Matrix.zero(F, self.dim, self.dim)
        for c, m in zip(x, self.actions):
            if c:
                out = out + m.scale(c)
        return out

    def is_valid(self) -> bool:
        B = self.algebra
        F = B.field
        if self.act(B.unit) != Matrix.identity(F, self.dim):
            return False
        for i in range(B.dim):
            for j in range(B.dim):
                prod = B.mul(B.basis_vector(i), B.basis_vector(j))
                if self.actions[i] @ self.actions[j] != self.act(prod):
                    return False
        return True

    def is_zero(self) -> bool:
        return self.dim == 0


def hom_B(M_actions, N_actions, dm: int, dn: int, field) -> list[Matrix]:
    """Basis of ``{f : f a_k = b_k f}`` for action lists of equal length."""
    nvar = dm * dn
    if nvar == 0:
        return []
    rows = []
    for a, b in zip(M_actions, N_actions):
        # (f a - b f)[i][j] = sum_l f[i][l] a[l][j] - sum_l b[i][l] f[l][j]
        for i in range(dn):
            for j in range(dm):
                row = [field.zero] * nvar
                for l in range(dm):
                    c = a.rows[l][j]
                    if c:
                        row[i * dm + l] = field.reduce(row[i * dm + l] + c)
                for l in range(dn):
                    c = b.rows[i][l]
                    if c:
                        row[l * dm + j] = field.reduce(row[l * dm + j] - c)
                if any(row):
                    rows.append(tuple(row))
    if rows:
        basis = nullspace_basis(Matrix._raw(field, len(rows), nvar, tuple(rows)))
    else:
        basis = [tuple(field.one if k == i else field.zero for k in range(nvar)) for i in range(nvar)]
    return [Matrix._raw(field, dn, dm, tuple(tuple(v[i * dm:(i + 1) * dm]) for i in range(dn))) for v in basis]


class BBFunctors:
    """The functors between ``X_c, Y_c`` over A and ``V, U`` over B for one complex."""

    def __init__(self, P: TwoTermComplex):
        self.complex = P
        self.endo: EndoAlgebra = endomorphism_algebra(P)
        self.B = self.endo.algebra
        self.bundle = self.endo.bundle
        self.field = P.algebra.field
        self.classes = ClassMembership(P)
        self._h1_vertex_actions = None

    # -- X side
    def to_B_module_X(self, M: Representation, check: bool = True) -> BBModule:
        if check and not self.classes.in_X(M):
            raise MembershipError(f"{_label(M)} is not in X")
        H = hom_space(self.bundle.H0, M)
        F = self.field
        if not H:
            return BBModule(self.B, 0, [Matrix.zero(F, 0, 0)] * self.B.dim)
        coords = BasisCoords(F, [f.flat() for f in H], len(H[0].flat()))
        acts = []
        for k in range(self.B.dim):
            h = self.endo.h0_action(k)
            acts.append(Matrix.from_columns(F, [coords((f @ h).flat()) for f in H], len(H)))
        return BBModule(self.B, len(H), acts)

    def from_B_module_V(self, V: BBModule, check: bool = True) -> Representation:
        """``H0 (x)_B V``."""
        if check and not self.in_V(V):
            raise MembershipError("B-module is not in V")
        H0 = self.bundle.H0
        A = H0.algebra
        F = self.field
        n = V.dim
        idn = Matrix.identity(F, n)
        dims = [H0.dims[v] * n for v in range(A.n)]
        maps = [kron(m, idn) for m in H0.maps]
        amb = Representation(A, dims, maps, check=False)
        spaces = []
        for v in range(A.n):
            gens = []
            hv = H0.dims[v]
            for k in range(self.B.dim):
                h = self.endo.h0_action(k).mats[v]
                diff = kron(h, idn) - kron(Matrix.identity(F, hv), V.actions[k])
                gens.extend(diff.columns())
            spaces.append(gens)
        Q, _ = quotient(amb, spaces)
        return Representation(A, Q.dims, Q.maps)

    # -- Y side
    def to_B_module_Y(self, N: Representation, check: bool = True) -> BBModule:
        """``H1(P*) (x)_A N`` with B acting on the left factor."""
        if check and not self.classes.in_Y(N):
            raise MembershipError(f"{_label(N)} is not in Y")
        T = tensor_over_A(self.bundle.H1dual, N)
        idN = identity_map(N).mats
        acts = [tensor_induced(T, T, self.endo.h1dual_action(k).mats, idN) for k in range(self.B.dim)]
        return BBModule(self.B, T.dim, acts)

    def _vertex_actions(self):
        if self._h1_vertex_actions is None:
            A = self.complex.algebra
            self._h1_vertex_actions = [
                [self.endo.h1dual_action(k).mats[v] for k in range(self.B.dim)] for v in range(A.n)
            ]
        return self._h1_vertex_actions

    def hom_from_h1dual(self, U: BBModule):
        """Per vertex ``v``: basis of ``Hom_B(H1(P*) e_v, U)``."""
        H1 = self.bundle.H1dual
        acts = self._vertex_actions()
        return [hom_B(acts[v], U.actions, H1.dims[v], U.dim, self.field) for v in range(len(acts))]

    def from_B_module_U(self, U: BBModule, check: bool = True) -> Representation:
        """``Hom_B(H1(P*), U)`` with ``(a psi)(y) = psi(y a)``."""
        if check and not self.in_U(U):
            raise MembershipError("B-module is not in U")
        H1 = self.bundle.H1dual
        A = self.complex.algebra
        F = self.field
        bases = self.hom_from_h1dual(U)
        coords = [
            BasisCoords(F, [m.flat() for m in b], len(b[0].flat())) if b else None for b in bases
        ]
        maps = []
        for k, (_, s, t) in enumerate(A.quiver.arrows):
            # in the opposite algebra arrow k runs t -> s: H1_t -> H1_s
            R = H1.maps[k]
            src, tgt = bases[s - 1], bases[t - 1]
            cols = [coords[t - 1]((psi @ R).flat()) for psi in src] if tgt else [() for _ in src]
            maps.append(
                Matrix.from_columns(F, cols, len(tgt)) if cols else Matrix.zero(F, len(tgt), 0)
            )
        return Representation(A, [len(b) for b in bases], maps)

    # -- B-side classes
    def in_U(self, M: BBModule) -> bool:
        return M.is_zero() or self.from_B_module_V(M, check=False).is_zero()

    def in_V(self, M: BBModule) -> bool:
        return M.is_zero() or all(not b for b in self.hom_from_h1dual(M))


def regular_B_module(B: FDAlgebra) -> BBModule:
    F = B.field
    acts = [
        Matrix.from_columns(F, [B.mul(B.basis_vector(k), B.basis_vector(j)) for j in range(B.dim)], B.dim)
        for k in range(B.dim)
    ]
    return BBModule(B, B.dim, acts)


def regular_identities(P: TwoTermComplex, seed: int = 0) -> dict:
    """``H0 (x)_B B = H0`` and ``Hom_B(H1(P*), B) = H^-1(P)``, as booleans."""
    fun = BBFunctors(P)
    bundle = fun.bundle
    if fun.B.dim == 0:
        return {"h0": bundle.H0.is_zero(), "hminus1": bundle.Hminus1.is_zero()}
    Breg = regular_B_module(fun.B)
    return {
        "h0": is_isomorphic(fun.from_B_module_V(Breg, check=False), bundle.H0, seed),
        "hminus1": is_isomorphic(fun.from_B_module_U(Breg, check=False), bundle.Hminus1, seed),
    }


def b_dimension_vector(pres, M: BBModule) -> tuple:
    """Dimension of ``e_i M`` for the vertex idempotents of a presentation of B."""
    return tuple(M.act(e).rank() for e in pres.idempotents)


@dataclass
class RoundTripReport:
    x_members: int = 0
    y_members: int = 0
    x_failures: list = dc_field(default_factory=list)
    y_failures: list = dc_field(default_factory=list)
    landing_failures: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.x_failures or self.y_failures or self.landing_failures)


def round_trips(P: TwoTermComplex, modules, seed: int = 0) -> RoundTripReport:
    """Both round trips on every member of ``X_c`` and ``Y_c`` among ``modules``."""
    fun = BBFunctors(P)
    cm = fun.classes
    rep = RoundTripReport()
    for M in modules:
        if M.is_zero():
            continue
        if cm.in_X(M):
            rep.x_members += 1
            V = fun.to_B_module_X(M, check=False)
            if not fun.in_V(V):
                rep.landing_failures.append(("V", M))
            back = fun.from_B_module_V(V, check=False)
            if not is_isomorphic(back, M, seed):
                rep.x_failures.append(M)
        if cm.in_Y(M):
            rep.y_members += 1
            U = fun.to_B_module_Y(M, check=False)
            if not fun.in_U(U):
                rep.landing_failures.append(("U", M))
            back = fun.from_B_module_U(U, check=False)
            if not is_isomorphic(back, M, seed):
                rep.y_failures.append(M)
    return rep


# ---------------------------------------------------------------- B side through the quiver presentation


def b_module_from_presentation(pres, fun: BBFunctors, L: Representation) -> BBModule:
    """A module over the presented algebra as a B-module (B basic)."""
    F = fun.field
    B = fun.B
    Lam = pres.algebra
    offs, acc = [], 0
    for d in L.dims:
        offs.append(acc)
        acc += d
    acts = []
    for k in range(B.dim):
        x = pres.from_source(B.basis_vector(k))
        rows = [[F.zero] * acc for _ in range(acc)]
        for i, c in enumerate(x):
            if not c:
                continue
            p = Lam.basis[i]
            m = L.path_matrix(p)
            s0, t0 = offs[p.source - 1], offs[p.target - 1]
            for a in range(m.nrows):
                for b in range(m.ncols):
                    if m.rows[a][b]:
                        rows[t0 + a][s0 + b] = F.reduce(rows[t0 + a][s0 + b] + c * m.rows[a][b])
        acts.append(Matrix._raw(F, acc, acc, tuple(tuple(r) for r in rows)))
    return BBModule(B, acc, acts)


@dataclass
class BSideReport:
    checked: bool
    modules: int = 0
    u_members: int = 0
    v_members: int = 0
    intersection_zero: bool = True
    hom_vanishing: bool = True
    note: str = ""

    @property
    def ok(self) -> bool:
        return not self.checked or (self.intersection_zero and self.hom_vanishing)


def verify_B_side(P: TwoTermComplex, bound=None, seed: int = 0) -> BSideReport:
    """``(U, V)`` on enumerated B-modules: no common nonzero member and ``Hom(U, V) = 0``."""
    from .presentation import present_as_quiver_algebra

    fun = BBFunctors(P)
    if not fun.field.is_finite:
        return BSideReport(False, note="B-side enumeration needs a finite field")
    if fun.B.dim == 0:
        return BSideReport(True, note="B is zero")
    pres = present_as_quiver_algebra(fun.B, seed)
    if pres.algebra.dim != fun.B.dim:
        return BSideReport(False, note="B is not basic; B-side check skipped")
    inv = enumerate_modules(pres.algebra, bound)
    mods = [b_module_from_presentation(pres, fun, L) for L in inv.representatives if not L.is_zero()]
    us = [M for M in mods if fun.in_U(M)]
    vs = [M for M in mods if fun.in_V(M)]
    rep = BSideReport(True, len(mods), len(us), len(vs))
    rep.intersection_zero = not any(fun.in_V(M) for M in us)
    for U in us:
        for V in vs:
            if hom_B(U.actions, V.actions, U.dim, V.dim, fun.field):
                rep.hom_vanishing = False
                return rep
    return rep


# ---------------------------------------------------------------- search


def candidate_pool(A) -> list[TwoTermComplex]:
    """Indecomposable two-term complexes with at most one summand per degree."""
    pool = [TwoTermComplex.stalk(A, (v,), name=f"P{v}") for v in range(1, A.n + 1)]
    pool += [TwoTermComplex(A, (w,), (), [[]], name=f"P{w}[1]") for w in range(1, A.n + 1)]
    for k, p in enumerate(A.basis):
        if p.length == 0:
            continue
        w, v = p.target, p.source
        x = A.path_vector(p)
        pool.append(TwoTermComplex(A, (w,), (v,), [[x]], name=f"P{w}->P{v}:{p.label(A.quiver)}"))
    return pool


def search_tilting(A, limit: int | None = None, seed: int = 0) -> list[TwoTermComplex]:
    """Basic tilting complexes built from ``n`` distinct pool complexes, in pool order."""
    pool = candidate_pool(A)
    n = A.n
    ok_pair = {}
    for i, X in enumerate(pool):
        for j in range(i, len(pool)):
            Y = pool[j]
            fine = all(hom_homotopy(a, b, s).dim == 0 for a, b in ((X, Y), (Y, X)) for s in (1, -1))
            ok_pair[i, j] = fine
    hits = []
    for combo in combinations(range(len(pool)), n):
        if not all(ok_pair[i, j] for i in combo for j in combo if i <= j):
            continue
        if not k0_spans([k0_class(pool[i]) for i in combo], n):
            continue
        T = direct_sum_complexes([pool[i] for i in combo], name="+".join(pool[i].name for i in combo))
        if is_tilting(T, use_oracle=False, seed=seed).overall == VERIFIED:
            hits.append(T)
            if limit is not None and len(hits) >= limit:
                break
    return hits
