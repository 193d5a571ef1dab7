"""Two-term complexes of projectives and their homotopy-category invariants.

A :class:`TwoTermComplex` is ``P^-1 -> P^0`` with ``P^-1 = sum P(w_r)`` and
``P^0 = sum P(v_c)``.  The differential is stored as a matrix of algebra
elements: ``matrix[r][c]`` lies in ``e_{w_r} A e_{v_c}`` (a combination of
paths from ``v_c`` to ``w_r``) and the map sends the generator of the
``r``-th summand to ``sum_c matrix[r][c]`` in summand ``c``, i.e. it is right
multiplication on row vectors.

The A-dual is the transposed matrix read over the opposite algebra, and the
Nakayama image is the vector-space dual of the realized A-dual.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

import sympy
from sympy.matrices.normalforms import smith_normal_form

from .linalg import Matrix, Subspace, nullspace_basis
from .modules import (
    AlgebraMismatch,
    ModuleMap,
    Representation,
    cokernel,
    dualize_map,
    hom_space,
    identity_map,
    induced_on_cokernel,
    kernel,
    projective_map,
    projective_map_matrix,
    projective_sum,
    zero_map,
    zero_module,
)
from .quiver import Algebra
from .structalg import BasisCoords, FDAlgebra


class TwoTermComplex:
    def __init__(self, algebra: Algebra, rows, cols, matrix, name: str = ""):
        self.algebra = algebra
        self.rows = tuple(rows)
        self.cols = tuple(cols)
        self.name = name
        F = algebra.field
        zero = algebra.zero()
        if matrix is None:
            matrix = [[zero] * len(self.cols) for _ in self.rows]
        self.matrix = tuple(tuple(tuple(F(x) for x in e) for e in row) for row in matrix)
        if len(self.matrix) != len(self.rows) or any(len(r) != len(self.cols) for r in self.matrix):
            raise ValueError("differential has the wrong shape")
        for v in self.rows + self.cols:
            if not 1 <= v <= algebra.n:
                raise ValueError(f"summand vertex {v} outside 1..{algebra.n}")
        for r, w in enumerate(self.rows):
            for c, v in enumerate(self.cols):
                if not algebra.in_corner(self.matrix[r][c], target=w, source=v):
                    raise ValueError(
                        f"entry ({r + 1},{c + 1}) is not a combination of paths {v} -> {w}"
                    )

    def __repr__(self):
        return f"<TwoTermComplex {self.name or ''} {self.rows} -> {self.cols}>"

    def __eq__(self, other):
        return (
            isinstance(other, TwoTermComplex)
            and self.algebra is other.algebra
            and (self.rows, self.cols, self.matrix) == (other.rows, other.cols, other.matrix)
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.matrix))

    @classmethod
    def stalk(cls, algebra: Algebra, vertices, name: str = ""):
        """``0 -> P`` with ``P = sum P(v)``."""
        return cls(algebra, (), vertices, [], name=name)

    @classmethod
    def free(cls, algebra: Algebra, name: str = ""):
        return cls.stalk(algebra, range(1, algebra.n + 1), name=name)

    @cached_property
    def p_minus1(self) -> Representation:
        return projective_sum(self.algebra, self.rows)

    @cached_property
    def p0(self) -> Representation:
        return projective_sum(self.algebra, self.cols)

    @cached_property
    def d(self) -> ModuleMap:
        return projective_map(self.algebra, self.rows, self.cols, self.matrix, self.p_minus1, self.p0)

    def entry_label(self, r: int, c: int) -> str:
        return self.algebra.format_element(self.matrix[r][c])


def direct_sum_complexes(parts, name: str = "") -> TwoTermComplex:
    parts = list(parts)
    A = parts[0].algebra
    for p in parts:
        if p.algebra is not A:
            raise AlgebraMismatch("direct sum of complexes over different algebras")
    rows = [v for p in parts for v in p.rows]
    cols = [v for p in parts for v in p.cols]
    zero = A.zero()
    mat = [[zero] * len(cols) for _ in rows]
    r0 = c0 = 0
    for p in parts:
        for r in range(len(p.rows)):
            for c in range(len(p.cols)):
                mat[r0 + r][c0 + c] = p.matrix[r][c]
        r0 += len(p.rows)
        c0 += len(p.cols)
    return TwoTermComplex(A, rows, cols, mat, name=name or "+".join(p.name for p in parts))


def a_dual(P: TwoTermComplex) -> TwoTermComplex:
    """``Hom_A(P, A)`` over the opposite algebra, in degrees 0 (rows) and 1 (cols)."""
    op = P.algebra.opposite()
    mat = [[P.matrix[r][c] for r in range(len(P.rows))] for c in range(len(P.cols))]
    return TwoTermComplex(op, P.cols, P.rows, mat, name=f"{P.name}*" if P.name else "")


class InjectiveComplex:
    """``D(C)`` for a two-term projective complex ``C`` over the opposite algebra.

    Terms are ``I(C.cols) -> I(C.rows)`` in degrees ``low``, ``low + 1``.
    """

    def __init__(self, opposite_complex: TwoTermComplex, low: int = 0):
        self.source_complex = opposite_complex
        self.algebra = opposite_complex.algebra.opposite()
        self.low = low

    @cached_property
    def d(self) -> ModuleMap:
        return dualize_map(self.source_complex.d)

    @property
    def first(self) -> Representation:
        return self.d.source

    @property
    def second(self) -> Representation:
        return self.d.target

    def inverse_nakayama(self) -> TwoTermComplex:
        """``Hom_A(DA, -)`` termwise: ``I(v) -> P(v)``, same degrees."""
        return a_dual(self.source_complex)


def nakayama_complex(P: TwoTermComplex) -> InjectiveComplex:
    """``nu(P) = D(P*)``: termwise ``I(w_r) -> I(v_c)`` in degrees -1, 0."""
    return InjectiveComplex(a_dual(P), low=-1)


@dataclass(frozen=True, eq=False)
class CohomologyBundle:
    H0: Representation
    Hminus1: Representation
    H1dual: Representation
    Hminus1_nu: Representation
    h0_projection: ModuleMap = dc_field(repr=False)
    h1dual_projection: ModuleMap = dc_field(repr=False)


def cohomology(P: TwoTermComplex) -> CohomologyBundle:
    H0, proj0 = cokernel(P.d)
    Hm1, _ = kernel(P.d)
    dual = a_dual(P)
    H1d, proj1 = cokernel(dual.d)
    Hnu, _ = kernel(nakayama_complex(P).d)
    H0.name, Hm1.name, H1d.name, Hnu.name = "H0", "H-1", "H1(P*)", "H-1(nu P)"
    return CohomologyBundle(H0, Hm1, H1d, Hnu, proj0, proj1)


def cached_cohomology(P: TwoTermComplex) -> CohomologyBundle:
    c = P.__dict__.get("_cohomology")
    if c is None:
        c = cohomology(P)
        P.__dict__["_cohomology"] = c
    return c


# ---------------------------------------------------------------- homotopy Hom


class _Terms:
    """Degrees -1 and 0 of a two-term object: a complex or a stalk module."""

    def __init__(self, m1: Representation, m0: Representation, d: ModuleMap):
        self.m1, self.m0, self.d = m1, m0, d

    def term(self, deg: int) -> Representation:
        return {-1: self.m1, 0: self.m0}[deg]


def _terms(obj) -> _Terms:
    if isinstance(obj, TwoTermComplex):
        return _Terms(obj.p_minus1, obj.p0, obj.d)
    if isinstance(obj, Representation):
        z = zero_module(obj.algebra)
        return _Terms(z, obj, zero_map(z, obj))
    raise TypeError("expected a TwoTermComplex or a Representation")


class HomK:
    """``Hom_K(P, Q[shift])`` for two-term ``P`` and two-term or stalk ``Q``.

    A chain map is a dict ``{source degree: ModuleMap}``; the component at
    source degree ``s`` lands in degree ``s + shift`` of ``Q``.
    """

    def __init__(self, P, Q, shift: int):
        self.P, self.Q, self.shift = P, Q, shift
        tp, tq = _terms(P), _terms(Q)
        self.tp, self.tq = tp, tq
        F = tp.m0.field
        self.field = F
        self.degrees = [s for s in (-1, 0) if s + shift in (-1, 0)]
        self.comp_basis = {s: hom_space(tp.term(s), tq.term(s + shift)) for s in self.degrees}
        self.comp_coords = {}
        self.offsets, acc = {}, 0
        for s in self.degrees:
            self.offsets[s] = acc
            acc += len(self.comp_basis[s])
        self.ambient = acc
        self.note = ""
        if abs(shift) >= 2:
            self.note = "zero for degree reasons"
        cycles = self._cycles()
        bounds = self._boundaries()
        self.boundaries = Subspace(F, acc, bounds)
        reps = []
        span = Subspace(F, acc, self.boundaries.basis)
        for z in cycles:
            if not span.contains(z):
                reps.append(z)
                span = Subspace(F, acc, list(span.basis) + [z])
        self.reps = reps
        self._coords = BasisCoords(F, list(self.boundaries.basis) + reps, acc) if acc else None

    @property
    def dim(self) -> int:
        return len(self.reps)

    def _coords_of(self, s, f: ModuleMap):
        b = self.comp_basis[s]
        if s not in self.comp_coords:
            self.comp_coords[s] = (
                BasisCoords(self.field, [x.flat() for x in b], len(b[0].flat())) if b else None
            )
        bc = self.comp_coords[s]
        if bc is None:
            if not f.is_zero():
                raise ValueError("component outside an empty Hom space")
            return ()
        return bc(f.flat())

    def flatten(self, chain: dict) -> tuple:
        F = self.field
        out = [F.zero] * self.ambient
        for s in self.degrees:
            f = chain.get(s)
            if f is None:
                continue
            for i, c in enumerate(self._coords_of(s, f)):
                out[self.offsets[s] + i] = c
        return tuple(out)

    def chain(self, vec) -> dict:
        out = {}
        for s in self.degrees:
            basis = self.comp_basis[s]
            src, tgt = self.tp.term(s), self.tq.term(s + self.shift)
            f = zero_map(src, tgt)
            for i, b in enumerate(basis):
                c = vec[self.offsets[s] + i]
                if c:
                    f = f + b.scale(c)
            out[s] = f
        return out

    def _cycles(self) -> list[tuple]:
        F = self.field
        tp, tq, n = self.tp, self.tq, self.shift
        if not self.ambient:
            return []
        # each equation is an expression valued in Hom_k(P^s, Q^{s+n+1})
        cols_blocks = []
        if n == 0:
            # d_Q f^-1 - f^0 d_P = 0
            cols = []
            for b in self.comp_basis[-1]:
                cols.append((tq.d @ b).flat())
            for b in self.comp_basis[0]:
                cols.append((b @ tp.d).scale(F(-1)).flat())
            cols_blocks.append(cols)
        elif n == -1:
            # f d_P = 0 and d_Q f = 0
            cols_blocks.append([(b @ tp.d).flat() for b in self.comp_basis[0]])
            cols_blocks.append([(tq.d @ b).flat() for b in self.comp_basis[0]])
        else:
            return [tuple(F.one if i == j else F.zero for i in range(self.ambient)) for j in range(self.ambient)]
        rows_total = []
        for cols in cols_blocks:
            m = len(cols[0]) if cols else 0
            for i in range(m):
                rows_total.append(tuple(col[i] for col in cols))
        if not rows_total:
            return [tuple(F.one if i == j else F.zero for i in range(self.ambient)) for j in range(self.ambient)]
        M = Matrix._raw(F, len(rows_total), self.ambient, tuple(rows_total))
        return nullspace_basis(M)

    def _boundaries(self) -> list[tuple]:
        tp, tq, n = self.tp, self.tq, self.shift
        if n not in (0, 1):
            return []
        # homotopies h: P^s -> Q^{s+n-1}
        out = []
        for s in (-1, 0):
            if s + n - 1 not in (-1, 0):
                continue
            for h in hom_space(tp.term(s), tq.term(s + n - 1)):
                chain = {}
                if s == 0:
                    chain[-1] = h @ tp.d
                if s + n - 1 == -1 and s + n in (-1, 0):
                    key = s
                    prev = chain.get(key)
                    term = tq.d @ h
                    chain[key] = term if prev is None else prev + term
                out.append(self.flatten(chain))
        return out

    def class_coords(self, chain: dict) -> tuple:
        """Coordinates of a chain map's class in :attr:`reps`."""
        if not self.ambient:
            return ()
        c = self._coords(self.flatten(chain))
        return c[self.boundaries.dim:]

    def basis_chains(self) -> list[dict]:
        return [self.chain(r) for r in self.reps]

    def is_null_homotopic(self, chain: dict) -> bool:
        return not any(self.class_coords(chain))


def hom_homotopy(P, Q, shift: int) -> HomK:
    return HomK(P, Q, shift)


@dataclass(frozen=True, eq=False)
class ChainMapClass:
    space: HomK
    coords: tuple

    def representative(self) -> dict:
        vec = [self.space.field.zero] * self.space.ambient
        for c, r in zip(self.coords, self.space.reps):
            if c:
                for i, x in enumerate(r):
                    vec[i] = self.space.field.reduce(vec[i] + c * x)
        return self.space.chain(vec)


def compose(g: dict, f: dict) -> dict:
    """``g o f`` for a degree-0 chain map ``f: P -> P'`` and ``g: P' -> Q[n]``."""
    out = {}
    for s, fs in f.items():
        if s in g:
            out[s] = g[s] @ fs
    return out


def post_compose(h: dict, f: dict, shift: int) -> dict:
    """``h o f`` for ``f: P -> Q[shift]`` and a degree-0 chain map ``h`` of ``Q``."""
    return {s: h[s + shift] @ fs for s, fs in f.items() if s + shift in h}


# ---------------------------------------------------------------- B = End(P)^op


class EndoAlgebra:
    """``B = End_K(P)^op``: ``b_i *_B b_j = b_j o b_i``.

    ``H0`` is a right B-module through ``x . b = H0(b)(x)`` and ``H1dual`` a
    left B-module through ``b . y = H1(b*)(y)``.
    """

    def __init__(self, P: TwoTermComplex):
        self.complex = P
        self.space = HomK(P, P, 0)
        self.basis = self.space.basis_chains()
        F = P.algebra.field
        self.field = F
        k = len(self.basis)
        table = [[self.space.class_coords(compose(self.basis[i], self.basis[j])) for j in range(k)] for i in range(k)]
        # opposite: b_i * b_j = b_j o b_i
        table = [[table[j][i] for j in range(k)] for i in range(k)]
        unit = self.space.class_coords({-1: identity_map(P.p_minus1), 0: identity_map(P.p0)}) if k else ()
        self.algebra = FDAlgebra(F, table, unit)
        self.bundle = cached_cohomology(P)
        self._h0 = None
        self._h1 = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element_chain(self, x) -> dict:
        vec = [self.field.zero] * self.space.ambient
        for c, r in zip(x, self.space.reps):
            if c:
                for i, a in enumerate(r):
                    vec[i] = self.field.reduce(vec[i] + c * a)
        return self.space.chain(vec)

    def h0_action(self, k: int) -> ModuleMap:
        """``H0(b_k)``; the right action is ``x . b_k``."""
        if self._h0 is None:
            pr = self.bundle.h0_projection
            self._h0 = [induced_on_cokernel(pr, b[0]) for b in self.basis]
        return self._h0[k]

    def h1dual_action(self, k: int) -> ModuleMap:
        """``H1(b_k*)`` on ``H1dual`` (left action)."""
        if self._h1 is None:
            P = self.complex
            dual = a_dual(P)
            pr = self.bundle.h1dual_projection
            out = []
            for b in self.basis:
                mat = projective_map_matrix(b[-1])
                tmat = [[mat[r][c] for r in range(len(mat))] for c in range(len(P.rows))]
                fstar = projective_map(dual.algebra, P.rows, P.rows, tmat, dual.p0, dual.p0)
                out.append(induced_on_cokernel(pr, fstar))
            self._h1 = out
        return self._h1[k]

    def check_bimodule(self) -> bool:
        """Right action on H0 and left action on H1dual respect the structure constants."""
        B = self.algebra
        for i in range(self.dim):
            for j in range(self.dim):
                prod = B.mul(B.basis_vector(i), B.basis_vector(j))
                lhs0 = self.h0_action(j) @ self.h0_action(i)
                lhs1 = self.h1dual_action(i) @ self.h1dual_action(j)
                rhs0 = self._combine(self.h0_action, prod, self.bundle.H0)
                rhs1 = self._combine(self.h1dual_action, prod, self.bundle.H1dual)
                if lhs0.flat() != rhs0.flat() or lhs1.flat() != rhs1.flat():
                    return False
        return True

    def _combine(self, act, x, M):
        out = zero_map(M, M)
        for k, c in enumerate(x):
            if c:
                out = out + act(k).scale(c)
        return out

    def h0_element_action(self, x) -> ModuleMap:
        return self._combine(self.h0_action, x, self.bundle.H0)

    def h1dual_element_action(self, x) -> ModuleMap:
        return self._combine(self.h1dual_action, x, self.bundle.H1dual)


def endomorphism_algebra(P: TwoTermComplex) -> EndoAlgebra:
    e = P.__dict__.get("_endo")
    if e is None:
        e = EndoAlgebra(P)
        P.__dict__["_endo"] = e
    return e


# ---------------------------------------------------------------- add classes, K0


def add_equal(P1: TwoTermComplex, P2: TwoTermComplex) -> bool:
    """``add(P1) = add(P2)`` in the homotopy category.

    In ``E = End_K(P1 + P2)`` with summand idempotents ``e1, e2`` this holds
    iff ``e1`` lies in ``E e2 E`` and ``e2`` in ``E e1 E``.  Contractible
    summands are zero in ``E`` and drop out on their own.
    """
    if P1.algebra is not P2.algebra:
        raise AlgebraMismatch("add_equal over different algebras")
    Q = direct_sum_complexes([P1, P2])
    E = EndoAlgebra(Q)
    if E.dim == 0:
        return True
    e1, e2 = _summand_idempotents(E, Q, len(P1.rows), len(P1.cols))
    B = E.algebra
    return _in_ideal(B, e1, e2) and _in_ideal(B, e2, e1)


def _summand_idempotents(E: EndoAlgebra, Q: TwoTermComplex, nr: int, nc: int):
    F = E.field
    out = []
    for first in (True, False):
        mats = {}
        for deg, verts, n1 in ((-1, Q.rows, nr), (0, Q.cols, nc)):
            M = Q.p_minus1 if deg == -1 else Q.p0
            keep = set(range(n1)) if first else set(range(n1, len(verts)))
            per_vertex = []
            for v in range(Q.algebra.n):
                diag = [F.one if c in keep else F.zero for (c, _k) in M._blocks[v]]
                per_vertex.append(_diagonal(F, diag))
            mats[deg] = ModuleMap(M, M, tuple(per_vertex))
        out.append(E.space.class_coords(mats))
    return out


def _diagonal(F, diag) -> Matrix:
    n = len(diag)
    return Matrix._raw(F, n, n, tuple(tuple(diag[i] if i == j else F.zero for j in range(n)) for i in range(n)))


def _in_ideal(B: FDAlgebra, x, e) -> bool:
    """``x in B e B``."""
    gens = []
    for i in range(B.dim):
        left = B.mul(B.basis_vector(i), e)
        if not any(left):
            continue
        for j in range(B.dim):
            v = B.mul(left, B.basis_vector(j))
            if any(v):
                gens.append(v)
    return Subspace(B.field, B.dim, gens).contains(x) if gens else not any(x)


def k0_class(P: TwoTermComplex, e=None) -> tuple:
    """Class of the summand ``e`` (an idempotent of ``End_K(P)``) in ``K_0`` on the ``P(j)`` basis.

    ``[eP]_j = rank(e on Hom_K(P, S_j)) - rank(e on Hom_K(P, S_j[1]))``; for
    ``e = 1`` this is the multiplicity of ``P(j)`` in ``P^0`` minus that in ``P^-1``.
    """
    from .modules import simple

    A = P.algebra
    E = endomorphism_algebra(P)
    chain = E.element_chain(e) if e is not None else {-1: identity_map(P.p_minus1), 0: identity_map(P.p0)}
    out = []
    for j in range(1, A.n + 1):
        S = simple(A, j)
        val = 0
        for shift, sign in ((0, 1), (1, -1)):
            H = HomK(P, S, shift)
            cols = [H.class_coords(compose(b, chain)) for b in H.basis_chains()]
            if cols:
                val += sign * Matrix.from_columns(E.field, cols, H.dim).rank()
        out.append(val)
    return tuple(out)


def indecomposable_summand_idempotents(P: TwoTermComplex, seed: int = 0) -> list:
    """Primitive idempotents of ``End_K(P)``: one per non-contractible indecomposable summand."""
    E = endomorphism_algebra(P)
    if E.dim == 0:
        return []
    return E.algebra.primitive_idempotents(seed)


def k0_spans(classes, n: int) -> bool:
    """Do the integer vectors span ``Z^n``?"""
    classes = [list(c) for c in classes]
    if n == 0:
        return True
    if len(classes) < n:
        return False
    M = sympy.Matrix(classes)
    if M.rank() < n:
        return False
    snf = smith_normal_form(M, domain=sympy.ZZ)
    return all(abs(snf[i, i]) == 1 for i in range(n))


def is_contractible(P: TwoTermComplex) -> bool:
    return endomorphism_algebra(P).dim == 0


__all__ = [
    "TwoTermComplex",
    "InjectiveComplex",
    "CohomologyBundle",
    "ChainMapClass",
    "HomK",
    "EndoAlgebra",
    "a_dual",
    "add_equal",
    "cohomology",
    "direct_sum_complexes",
    "endomorphism_algebra",
    "hom_homotopy",
    "indecomposable_summand_idempotents",
    "is_contractible",
    "k0_class",
    "k0_spans",
    "nakayama_complex",
]
