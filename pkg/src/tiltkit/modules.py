"""Finite-dimensional modules as quiver representations.

A left module over ``A = kQ/I`` is a vector space per vertex and one matrix
per arrow (target dim x source dim).  A right ``A``-module is a left module
over ``A.opposite()``; ``dualize`` swaps the two.

Projective modules built here remember their summand vertices (``proj``);
the basis of ``P(v)`` at vertex ``j`` is the algebra basis paths ``v -> j`` in
algebra-basis order.  Injectives are duals of opposite projectives.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .linalg import (
    Field,
    Matrix,
    Subspace,
    block_diag,
    nullspace_basis,
    solve,
    vstack,
)
from .quiver import Algebra, Path
from .structalg import BasisCoords, FDAlgebra

ISO_EXHAUSTIVE_LIMIT = 2**12
ISO_RANDOM_TRIES = 64


class AlgebraMismatch(ValueError):
    pass


class Representation:
    """Left module over ``algebra``; ``maps[k]`` is the matrix of arrow ``k``."""

    def __init__(self, algebra: Algebra, dims, maps, name: str = "", proj=None, check: bool = True):
        self.algebra = algebra
        self.dims = tuple(dims)
        self.maps = tuple(maps)
        self.name = name
        self.proj = tuple(proj) if proj is not None else None
        self._paths: dict = {}
        if len(self.dims) != algebra.n:
            raise ValueError(f"dimension vector has {len(self.dims)} entries, expected {algebra.n}")
        q = algebra.quiver
        if len(self.maps) != len(q.arrows):
            raise ValueError("one matrix per arrow is required")
        for k, m in enumerate(self.maps):
            s, t = q.source(k), q.target(k)
            if m.shape != (self.dims[t - 1], self.dims[s - 1]) or m.field is not algebra.field:
                raise ValueError(f"matrix for arrow {q.name(k)} has the wrong shape or field")
        if check:
            for rel in algebra.relations:
                if not self.relation_matrix(rel).is_zero():
                    raise ValueError(f"relation {_fmt_rel(algebra, rel)} does not hold")

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def __repr__(self):
        nm = f" {self.name}" if self.name else ""
        return f"<Representation{nm} dims={self.dims}>"

    def __eq__(self, other):
        return (
            isinstance(other, Representation)
            and self.algebra is other.algebra
            and self.dims == other.dims
            and self.maps == other.maps
        )

    def __hash__(self):
        return hash((self.dims, self.maps))

    def path_matrix(self, path: Path) -> Matrix:
        """Action of a path: ``dims[target] x dims[source]``."""
        m = self._paths.get(path)
        if m is not None:
            return m
        F = self.field
        if not path.arrows:
            m = Matrix.identity(F, self.dims[path.source - 1])
        else:
            m = self.maps[path.arrows[-1]]
            for k in reversed(path.arrows[:-1]):
                m = self.maps[k] @ m
        self._paths[path] = m
        return m

    def relation_matrix(self, rel) -> Matrix:
        s, t = rel[0][1].source, rel[0][1].target
        out = Matrix.zero(self.field, self.dims[t - 1], self.dims[s - 1])
        for c, p in rel:
            out = out + self.path_matrix(p).scale(c)
        return out

    def element_block(self, x, source: int, target: int) -> Matrix:
        """Action of the component of ``x`` in ``e_target A e_source``."""
        A = self.algebra
        out = Matrix.zero(self.field, self.dims[target - 1], self.dims[source - 1])
        for k, c in enumerate(x):
            if c:
                p = A.basis[k]
                if p.source == source and p.target == target:
                    out = out + self.path_matrix(p).scale(c)
        return out

    def offsets(self) -> list[int]:
        out, acc = [], 0
        for d in self.dims:
            out.append(acc)
            acc += d
        return out


@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: Representation
    target: Representation
    mats: tuple  # per vertex, target.dims[v] x source.dims[v]

    def __post_init__(self):
        if self.source.algebra is not self.target.algebra:
            raise AlgebraMismatch("map between modules over different algebras")
        for v, m in enumerate(self.mats):
            if m.shape != (self.target.dims[v], self.source.dims[v]):
                raise ValueError("vertex matrix has the wrong shape")

    @property
    def field(self):
        return self.source.field

    def is_natural(self) -> bool:
        q = self.source.algebra.quiver
        for k in range(len(q.arrows)):
            s, t = q.source(k) - 1, q.target(k) - 1
            if self.target.maps[k] @ self.mats[s] != self.mats[t] @ self.source.maps[k]:
                return False
        return True

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        """``self @ other`` = apply ``other`` first."""
        return ModuleMap(other.source, self.target, tuple(a @ b for a, b in zip(self.mats, other.mats)))

    def __add__(self, other):
        return ModuleMap(self.source, self.target, tuple(a + b for a, b in zip(self.mats, other.mats)))

    def scale(self, c):
        return ModuleMap(self.source, self.target, tuple(m.scale(c) for m in self.mats))

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats)

    def flat(self) -> tuple:
        return tuple(x for m in self.mats for x in m.flat())

    def rank(self) -> int:
        return sum(m.rank() for m in self.mats)

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and all(m.is_invertible() for m in self.mats)

    def total_matrix(self) -> Matrix:
        return block_diag(self.field, self.mats)


def map_from_flat(source: Representation, target: Representation, vec) -> ModuleMap:
    mats, pos = [], 0
    for v in range(source.algebra.n):
        r, c = target.dims[v], source.dims[v]
        rows = [vec[pos + i * c: pos + (i + 1) * c] for i in range(r)]
        mats.append(Matrix._raw(source.field, r, c, tuple(tuple(x) for x in rows)))
        pos += r * c
    return ModuleMap(source, target, tuple(mats))


def identity_map(M: Representation) -> ModuleMap:
    return ModuleMap(M, M, tuple(Matrix.identity(M.field, d) for d in M.dims))


def zero_map(M: Representation, N: Representation) -> ModuleMap:
    return ModuleMap(M, N, tuple(Matrix.zero(M.field, N.dims[v], M.dims[v]) for v in range(M.algebra.n)))


def _fmt_rel(A, rel):
    return " + ".join(f"{c}*{p.label(A.quiver)}" for c, p in rel)


# ---------------------------------------------------------------- constructions


def zero_module(A: Algebra) -> Representation:
    F = A.field
    maps = [Matrix.zero(F, 0, 0) for _ in A.quiver.arrows]
    return Representation(A, (0,) * A.n, maps, name="0", check=False)


def _check_vertex(A, i):
    if not 1 <= i <= A.n:
        raise IndexError(f"vertex {i} outside 1..{A.n}")


def simple(A: Algebra, i: int) -> Representation:
    _check_vertex(A, i)
    F = A.field
    dims = tuple(1 if v == i else 0 for v in range(1, A.n + 1))
    maps = [Matrix.zero(F, dims[t - 1], dims[s - 1]) for _, s, t in A.quiver.arrows]
    return Representation(A, dims, maps, name=f"S{i}", check=False)


def projective_sum(A: Algebra, vertices) -> Representation:
    """``P(v_1) + ... + P(v_m)`` with the path basis, summand by summand."""
    vertices = tuple(vertices)
    for v in vertices:
        _check_vertex(A, v)
    F = A.field
    # blocks[j] = list of (summand, algebra basis index) spanning vertex j
    blocks = [[] for _ in range(A.n)]
    for c, v in enumerate(vertices):
        for k in A.basis_indices(source=v):
            blocks[A.basis[k].target - 1].append((c, k))
    dims = [len(b) for b in blocks]
    pos = [{ck: i for i, ck in enumerate(b)} for b in blocks]
    maps = []
    q = A.quiver
    for a in range(len(q.arrows)):
        s, t = q.source(a), q.target(a)
        ai = A.arrow_index_in_basis(a)
        rows = [[F.zero] * dims[s - 1] for _ in range(dims[t - 1])]
        for col, (c, k) in enumerate(blocks[s - 1]):
            for kk, coef in A.mult[ai][k].items():
                rows[pos[t - 1][(c, kk)]][col] = coef
        maps.append(Matrix._raw(F, dims[t - 1], dims[s - 1], tuple(tuple(r) for r in rows)))
    name = "+".join(f"P{v}" for v in vertices) if vertices else "0"
    M = Representation(A, dims, maps, name=name, proj=vertices, check=False)
    M._blocks = blocks
    M._pos = pos
    return M


def projective(A: Algebra, i: int) -> Representation:
    """``A e_i``: basis paths with source ``i``."""
    _check_vertex(A, i)
    return projective_sum(A, (i,))


def projective_element(P: Representation, summand: int, x) -> tuple:
    """Coordinates in ``P`` (per vertex, concatenated) of ``x`` placed in a summand."""
    out = []
    for j in range(P.algebra.n):
        col = [P.field.zero] * P.dims[j]
        for i, (c, k) in enumerate(P._blocks[j]):
            if c == summand:
                col[i] = x[k]
        out.append(col)
    return out


def dualize(M: Representation) -> Representation:
    """``D M = Hom_k(M, k)`` as a left module over the opposite algebra."""
    op = M.algebra.opposite()
    maps = [m.T for m in M.maps]
    name = f"D({M.name})" if M.name else ""
    return Representation(op, M.dims, maps, name=name, check=False)


def dualize_map(f: ModuleMap) -> ModuleMap:
    return ModuleMap(dualize(f.target), dualize(f.source), tuple(m.T for m in f.mats))


def injective_sum(A: Algebra, vertices) -> Representation:
    out = dualize(projective_sum(A.opposite(), vertices))
    out.name = "+".join(f"I{v}" for v in vertices) if vertices else "0"
    return out


def injective(A: Algebra, i: int) -> Representation:
    """``D(e_i A)``."""
    _check_vertex(A, i)
    return injective_sum(A, (i,))


def nakayama_projective(A: Algebra, i: int) -> Representation:
    """Image of ``P(i)`` under the Nakayama functor, ``I(i) = D(e_i A)``."""
    return injective(A, i)


def regular_module(A: Algebra) -> Representation:
    return projective_sum(A, range(1, A.n + 1))


def direct_sum(mods, name: str = "") -> Representation:
    mods = list(mods)
    if not mods:
        raise ValueError("direct_sum of an empty list needs an algebra; use zero_module")
    A = mods[0].algebra
    for M in mods:
        if M.algebra is not A:
            raise AlgebraMismatch("direct sum over different algebras")
    dims = [sum(M.dims[v] for M in mods) for v in range(A.n)]
    maps = [block_diag(A.field, [M.maps[k] for M in mods]) for k in range(len(A.quiver.arrows))]
    proj = None
    if all(M.proj is not None for M in mods):
        proj = tuple(v for M in mods for v in M.proj)
    if proj is not None:
        # keep the summand-ordered path basis
        out = projective_sum(A, proj)
        out.name = name or "+".join(M.name for M in mods)
        return out
    return Representation(A, dims, maps, name=name or "+".join(M.name or "?" for M in mods), check=False)


def direct_sum_maps(maps_) -> ModuleMap:
    """Block-diagonal sum of maps (sources and targets summed in order)."""
    src = direct_sum([f.source for f in maps_])
    tgt = direct_sum([f.target for f in maps_])
    F = src.field
    mats = [block_diag(F, [f.mats[v] for f in maps_]) for v in range(src.algebra.n)]
    return ModuleMap(src, tgt, tuple(mats))


# ---------------------------------------------------------------- sub / quotient


def submodule(M: Representation, spaces, name: str = ""):
    """Submodule spanned per vertex by ``spaces[v]`` (assumed arrow-stable).

    Returns ``(S, inclusion)``.
    """
    F = M.field
    bases = []
    for v in range(M.algebra.n):
        W = Subspace(F, M.dims[v], spaces[v])
        bases.append(W.basis)
    dims = [len(b) for b in bases]
    incl = [Matrix.from_columns(F, b, M.dims[v]) if b else Matrix.zero(F, M.dims[v], 0)
            for v, b in enumerate(bases)]
    coords = [BasisCoords(F, b, M.dims[v]) for v, b in enumerate(bases)]
    q = M.algebra.quiver
    maps = []
    for k in range(len(q.arrows)):
        s, t = q.source(k) - 1, q.target(k) - 1
        cols = [coords[t](M.maps[k].apply(b)) for b in bases[s]]
        maps.append(Matrix.from_columns(F, cols, dims[t]) if cols else Matrix.zero(F, dims[t], 0))
    S = Representation(M.algebra, dims, maps, name=name, check=False)
    return S, ModuleMap(S, M, tuple(incl))


def quotient(M: Representation, spaces, name: str = ""):
    """``M / U`` for an arrow-stable ``U``; returns ``(Q, projection)``."""
    F = M.field
    subs = [Subspace(F, M.dims[v], spaces[v]) for v in range(M.algebra.n)]
    dims = [W.codim for W in subs]
    proj = []
    for v, W in enumerate(subs):
        cols = [W.quotient_coords(_unit(F, M.dims[v], j)) for j in range(M.dims[v])]
        proj.append(Matrix.from_columns(F, cols, dims[v]) if cols else Matrix.zero(F, dims[v], 0))
    q = M.algebra.quiver
    maps = []
    for k in range(len(q.arrows)):
        s, t = q.source(k) - 1, q.target(k) - 1
        cols = [subs[t].quotient_coords(M.maps[k].apply(subs[s].lift(_unit(F, dims[s], j))))
                for j in range(dims[s])]
        maps.append(Matrix.from_columns(F, cols, dims[t]) if cols else Matrix.zero(F, dims[t], 0))
    Q = Representation(M.algebra, dims, maps, name=name, check=False)
    return Q, ModuleMap(M, Q, tuple(proj))


def _unit(F, n, i):
    v = [F.zero] * n
    v[i] = F.one
    return tuple(v)


def kernel(f: ModuleMap):
    """``(Ker f, inclusion)``."""
    spaces = [nullspace_basis(m) for m in f.mats]
    return submodule(f.source, spaces)


def image(f: ModuleMap):
    """``(Im f, inclusion into the target)``."""
    spaces = [m.columns() for m in f.mats]
    return submodule(f.target, spaces)


def cokernel(f: ModuleMap):
    """``(Cok f, projection from the target)``."""
    spaces = [m.columns() for m in f.mats]
    return quotient(f.target, spaces)


def radical_spaces(M: Representation):
    q = M.algebra.quiver
    spaces = [[] for _ in range(M.algebra.n)]
    for k in range(len(q.arrows)):
        spaces[q.target(k) - 1].extend(M.maps[k].columns())
    return spaces


def radical(M: Representation):
    return submodule(M, radical_spaces(M), name=f"rad({M.name})")[0]


def top(M: Representation):
    return quotient(M, radical_spaces(M), name=f"top({M.name})")[0]


def socle(M: Representation):
    q = M.algebra.quiver
    F = M.field
    spaces = []
    for v in range(1, M.algebra.n + 1):
        outs = [M.maps[k] for k in q.arrows_out_of(v)]
        if outs:
            spaces.append(nullspace_basis(vstack(outs)))
        else:
            spaces.append([_unit(F, M.dims[v - 1], j) for j in range(M.dims[v - 1])])
    return submodule(M, spaces, name=f"soc({M.name})")[0]


# ---------------------------------------------------------------- Hom


def hom_space(M: Representation, N: Representation) -> list[ModuleMap]:
    """Basis of ``Hom_A(M, N)``."""
    if M.algebra is not N.algebra:
        raise AlgebraMismatch("Hom between modules over different algebras")
    if M.proj is not None:
        return _hom_from_projective(M, N)
    return hom_space_solve(M, N)


def hom_space_solve(M: Representation, N: Representation) -> list[ModuleMap]:
    """Basis of ``Hom_A(M, N)`` from the naturality equations alone."""
    if M.algebra is not N.algebra:
        raise AlgebraMismatch("Hom between modules over different algebras")
    A = M.algebra
    F = M.field
    n = A.n
    off, acc = [], 0
    for v in range(n):
        off.append(acc)
        acc += N.dims[v] * M.dims[v]
    nvar = acc
    if nvar == 0:
        return []
    rows = []
    q = A.quiver
    for k in range(len(q.arrows)):
        s, t = q.source(k) - 1, q.target(k) - 1
        Nk, Mk = N.maps[k].rows, M.maps[k].rows
        ms, mt = M.dims[s], M.dims[t]
        # N_k f_s - f_t M_k = 0, entry (i, j) with i in N_t, j in M_s
        for i in range(N.dims[t]):
            for j in range(ms):
                row = [F.zero] * nvar
                for l in range(N.dims[s]):
                    c = Nk[i][l]
                    if c:
                        row[off[s] + l * ms + j] += c
                for l in range(mt):
                    c = Mk[l][j]
                    if c:
                        idx = off[t] + i * mt + l
                        row[idx] = F.reduce(row[idx] - c)
                if any(row):
                    rows.append([F.reduce(x) for x in row])
    if rows:
        basis = nullspace_basis(Matrix._raw(F, len(rows), nvar, tuple(tuple(r) for r in rows)))
    else:
        basis = [_unit(F, nvar, i) for i in range(nvar)]
    return [map_from_flat(M, N, b) for b in basis]


def _hom_from_projective(P: Representation, N: Representation) -> list[ModuleMap]:
    """Yoneda basis: a map out of ``P(v)`` is fixed by the image of ``e_v``."""
    A = P.algebra
    F = P.field
    out = []
    for c, v in enumerate(P.proj):
        for idx in range(N.dims[v - 1]):
            nvec = _unit(F, N.dims[v - 1], idx)
            mats = []
            for j in range(A.n):
                cols = []
                for (cc, k) in P._blocks[j]:
                    if cc == c:
                        cols.append(N.path_matrix(A.basis[k]).apply(nvec))
                    else:
                        cols.append((F.zero,) * N.dims[j])
                mats.append(Matrix.from_columns(F, cols, N.dims[j]) if cols else Matrix.zero(F, N.dims[j], 0))
            out.append(ModuleMap(P, N, tuple(mats)))
    return out


def hom_dim(M: Representation, N: Representation) -> int:
    return len(hom_space(M, N))


def coordinates_in(basis: list[ModuleMap], f: ModuleMap) -> tuple:
    if not basis:
        if not f.is_zero():
            raise ValueError("map is not in the span of an empty basis")
        return ()
    bc = BasisCoords(f.field, [b.flat() for b in basis], len(basis[0].flat()))
    return bc(f.flat())


# ---------------------------------------------------------------- covers


def projective_cover(M: Representation) -> ModuleMap:
    """Minimal cover ``P -> M`` with ``P = sum P(i)^(m_i)``, ``m_i`` = top multiplicities."""
    A = M.algebra
    F = M.field
    rad = radical_spaces(M)
    gens = []  # (vertex, vector in M_v)
    for v in range(1, A.n + 1):
        W = Subspace(F, M.dims[v - 1], rad[v - 1])
        for j in W.free:
            gens.append((v, _unit(F, M.dims[v - 1], j)))
    P = projective_sum(A, [v for v, _ in gens])
    mats = []
    for j in range(A.n):
        cols = []
        for (c, k) in P._blocks[j]:
            v, m = gens[c]
            cols.append(M.path_matrix(A.basis[k]).apply(m))
        mats.append(Matrix.from_columns(F, cols, M.dims[j]) if cols else Matrix.zero(F, M.dims[j], 0))
    return ModuleMap(P, M, tuple(mats))


def injective_envelope(M: Representation) -> ModuleMap:
    """Minimal embedding ``M -> sum I(i)``, dual to the cover of ``D M``."""
    cov = projective_cover(dualize(M))
    env = dualize_map(cov)  # D D M -> D P
    return ModuleMap(M, env.target, env.mats)


def syzygy(M: Representation):
    """``(Omega M, inclusion into the cover, cover)``."""
    cov = projective_cover(M)
    K, inc = kernel(cov)
    return K, inc, cov


def projective_map_matrix(f: ModuleMap) -> list[list[tuple]]:
    """Algebra-element matrix of a map between projective sums.

    Entry ``[r][c]`` lies in ``e_{w_r} A e_{v_c}``: the generator of the
    ``r``-th source summand ``P(w_r)`` goes to ``sum_c entry[r][c]`` placed in
    summand ``c`` of the target.
    """
    P, Q = f.source, f.target
    if P.proj is None or Q.proj is None:
        raise ValueError("both modules must be realized projective sums")
    A = P.algebra
    F = P.field
    out = []
    for r, w in enumerate(P.proj):
        gen_pos = P._pos[w - 1][(r, A.index[Path(w, w)])]
        img = [row[gen_pos] for row in f.mats[w - 1].rows]
        row_entries = []
        for c, v in enumerate(Q.proj):
            x = [F.zero] * A.dim
            for i, (cc, k) in enumerate(Q._blocks[w - 1]):
                if cc == c:
                    x[k] = img[i]
            row_entries.append(tuple(x))
        out.append(row_entries)
    return out


def projective_map(A: Algebra, rows, cols, matrix, P=None, Q=None) -> ModuleMap:
    """Realize right multiplication by an algebra-element matrix."""
    P = P if P is not None else projective_sum(A, rows)
    Q = Q if Q is not None else projective_sum(A, cols)
    F = A.field
    mats = []
    for j in range(A.n):
        cols_out = []
        for (r, k) in P._blocks[j]:
            vec = [F.zero] * Q.dims[j]
            for c in range(len(Q.proj)):
                x = matrix[r][c]
                if not any(x):
                    continue
                prod = A.mul(_unit(F, A.dim, k), x)
                for i, (cc, kk) in enumerate(Q._blocks[j]):
                    if cc == c and prod[kk]:
                        vec[i] = F.reduce(vec[i] + prod[kk])
            cols_out.append(tuple(vec))
        mats.append(Matrix.from_columns(F, cols_out, Q.dims[j]) if cols_out else Matrix.zero(F, Q.dims[j], 0))
    return ModuleMap(P, Q, tuple(mats))


def min_proj_presentation(M: Representation):
    """``P^-1 -> P^0 -> M -> 0`` with both terms projective covers."""
    from .complexes import TwoTermComplex

    cov = projective_cover(M)
    K, inc = kernel(cov)
    cov1 = projective_cover(K)
    d = inc @ cov1
    mat = projective_map_matrix(d)
    return TwoTermComplex(M.algebra, cov1.source.proj, cov.source.proj, mat)


def min_inj_presentation(M: Representation):
    """``0 -> M -> I^0 -> I^1``, dual to the minimal presentation of ``D M``."""
    from .complexes import InjectiveComplex

    return InjectiveComplex(min_proj_presentation(dualize(M)))


# ---------------------------------------------------------------- trace


@dataclass(frozen=True, eq=False)
class CanonicalSequence:
    tau: Representation
    inclusion: ModuleMap
    pi: Representation
    projection: ModuleMap


def trace(T: Representation, X: Representation) -> CanonicalSequence:
    """``0 -> tau(X) -> X -> pi(X) -> 0`` with ``tau(X)`` the sum of images of ``Hom(T, X)``."""
    spaces = [[] for _ in range(X.algebra.n)]
    for f in hom_space(T, X):
        for v, m in enumerate(f.mats):
            spaces[v].extend(m.columns())
    tau, inc = submodule(X, spaces, name=f"tau({X.name})")
    pi, proj = quotient(X, spaces, name=f"pi({X.name})")
    return CanonicalSequence(tau, inc, pi, proj)


# ---------------------------------------------------------------- tensor


class TensorProduct:
    """``M (x)_A N`` for a right module ``M`` (left over the opposite) and left ``N``.

    Ambient space is ``sum_i M_i (x) N_i``; the quotient is by
    ``(m a) (x) n - m (x) (a n)`` over all arrows ``a``.
    """

    def __init__(self, M: Representation, N: Representation):
        A = N.algebra
        if M.algebra is not A.opposite():
            raise AlgebraMismatch("tensor needs a right module over the algebra of the left factor")
        self.M, self.N, self.algebra = M, N, A
        F = A.field
        self.field = F
        self.offsets, acc = [], 0
        for v in range(A.n):
            self.offsets.append(acc)
            acc += M.dims[v] * N.dims[v]
        self.ambient = acc
        rels = []
        q = A.quiver
        for k in range(len(q.arrows)):
            s, t = q.source(k) - 1, q.target(k) - 1
            R = M.maps[k]  # M_t -> M_s
            L = N.maps[k]  # N_s -> N_t
            for a in range(M.dims[t]):
                for b in range(N.dims[s]):
                    vec = [F.zero] * acc
                    for i in range(M.dims[s]):
                        c = R.rows[i][a]
                        if c:
                            idx = self.index(s, i, b)
                            vec[idx] = F.reduce(vec[idx] + c)
                    for j in range(N.dims[t]):
                        c = L.rows[j][b]
                        if c:
                            idx = self.index(t, a, j)
                            vec[idx] = F.reduce(vec[idx] - c)
                    if any(vec):
                        rels.append(vec)
        self.relations = Subspace(F, acc, rels)

    def index(self, v: int, a: int, b: int) -> int:
        return self.offsets[v] + a * self.N.dims[v] + b

    @property
    def dim(self) -> int:
        return self.relations.codim

    def coords(self, vec) -> tuple:
        return self.relations.quotient_coords(vec)

    def lift(self, coords) -> tuple:
        return self.relations.lift(coords)

    def basis_lifts(self) -> list[tuple]:
        F = self.field
        return [self.lift(_unit(F, self.dim, i)) for i in range(self.dim)]


def tensor_over_A(M: Representation, N: Representation) -> TensorProduct:
    return TensorProduct(M, N)


def tensor_induced(T1: TensorProduct, T2: TensorProduct, f_mats, g_mats) -> Matrix:
    """Matrix of ``f (x) g : T1 -> T2`` on quotient coordinates.

    ``f_mats[v]`` maps ``T1.M_v -> T2.M_v`` and ``g_mats[v]`` maps ``T1.N_v -> T2.N_v``.
    """
    F = T1.field
    cols = []
    for lift in T1.basis_lifts():
        out = [F.zero] * T2.ambient
        for v in range(T1.algebra.n):
            m1, n1 = T1.M.dims[v], T1.N.dims[v]
            if not m1 or not n1:
                continue
            fm, gm = f_mats[v], g_mats[v]
            for a in range(m1):
                for b in range(n1):
                    c = lift[T1.index(v, a, b)]
                    if not c:
                        continue
                    fa = fm.column(a)
                    gb = gm.column(b)
                    for a2, x in enumerate(fa):
                        if not x:
                            continue
                        for b2, y in enumerate(gb):
                            if y:
                                idx = T2.index(v, a2, b2)
                                out[idx] = F.reduce(out[idx] + c * x * y)
        cols.append(T2.coords(out))
    if not cols:
        return Matrix.zero(F, T2.dim, 0)
    return Matrix.from_columns(F, cols, T2.dim)


# ---------------------------------------------------------------- Ext / Tor


def ext1(M: Representation, N: Representation) -> int:
    """``dim Ext^1(M, N)`` from ``0 -> Hom(M,N) -> Hom(P0,N) -> Hom(Omega M,N) -> Ext^1 -> 0``."""
    K, _inc, cov = syzygy(M)
    return hom_dim(K, N) - hom_dim(cov.source, N) + hom_dim(M, N)


def ext2(M: Representation, N: Representation) -> int:
    """``Ext^2(M, N) = Ext^1(Omega M, N)``."""
    K, _inc, _cov = syzygy(M)
    return ext1(K, N)


def tor1(M: Representation, N: Representation) -> int:
    """``dim Tor_1(M, N)`` via the syzygy of ``N``: ``0 -> Tor_1 -> M(x)Omega -> M(x)P0 -> M(x)N -> 0``."""
    K, _inc, cov = syzygy(N)
    return tensor_over_A(M, K).dim - tensor_over_A(M, cov.source).dim + tensor_over_A(M, N).dim


def tor1_left(M: Representation, N: Representation) -> int:
    """Same as :func:`tor1` but resolving the right module ``M`` instead."""
    K, _inc, cov = syzygy(M)
    return tensor_over_A(K, N).dim - tensor_over_A(cov.source, N).dim + tensor_over_A(M, N).dim


# ---------------------------------------------------------------- End, decomposition, iso


def endomorphism_ring(M: Representation):
    """``(FDAlgebra, basis maps)``; multiplication is composition ``x*y = x o y``."""
    basis = hom_space(M, M)
    F = M.field
    if not basis:
        return FDAlgebra(F, [], ()), basis
    coords = BasisCoords(F, [b.flat() for b in basis], len(basis[0].flat()))
    table = [[coords((x @ y).flat()) for y in basis] for x in basis]
    unit = coords(identity_map(M).flat())
    return FDAlgebra(F, table, unit), basis


def _combine(basis, coeffs) -> ModuleMap:
    out = None
    for c, b in zip(coeffs, basis):
        if c:
            term = b.scale(c)
            out = term if out is None else out + term
    if out is None:
        return zero_map(basis[0].source, basis[0].target)
    return out


def indecomposable_summands(M: Representation, seed: int = 0) -> list[Representation]:
    """Images of a complete set of primitive orthogonal idempotents of ``End(M)``."""
    if M.is_zero():
        return []
    E, basis = endomorphism_ring(M)
    out = []
    for e in E.primitive_idempotents(seed):
        phi = _combine(basis, e)
        S, _ = image(phi)
        out.append(S)
    return out


def is_indecomposable(M: Representation, seed: int = 0) -> bool:
    return not M.is_zero() and len(indecomposable_summands(M, seed)) == 1


def _nilpotent_endo(f: ModuleMap) -> bool:
    T = f.total_matrix()
    return T.power(max(T.nrows, 1)).is_zero()


def _iso_indecomposables(M: Representation, N: Representation) -> bool:
    if M.dims != N.dims:
        return False
    fs = hom_space(M, N)
    gs = hom_space(N, M)
    for f in fs:
        for g in gs:
            if not _nilpotent_endo(g @ f):
                return True
    return False


def is_isomorphic(M: Representation, N: Representation, seed: int = 0) -> bool:
    """Decide ``M = N``: search for an invertible hom, then fall back to Krull-Schmidt matching."""
    if M.algebra is not N.algebra:
        raise AlgebraMismatch("isomorphism test over different algebras")
    if M.dims != N.dims:
        return False
    if M.is_zero():
        return True
    H = hom_space(M, N)
    if not H:
        return False
    F = M.field
    h = len(H)
    if F.is_finite and F.p ** h <= ISO_EXHAUSTIVE_LIMIT:
        for coeffs in product(range(F.p), repeat=h):
            if any(coeffs) and _combine(H, coeffs).is_iso():
                return True
        return False
    for f in H:
        if f.is_iso():
            return True
    rng = random.Random(seed)
    for _ in range(ISO_RANDOM_TRIES):
        if F.is_finite:
            coeffs = [rng.randrange(F.p) for _ in range(h)]
        else:
            coeffs = [F(rng.randint(-10**6, 10**6)) for _ in range(h)]
        if _combine(H, coeffs).is_iso():
            return True
    return _krull_schmidt_match(M, N, seed)


def _krull_schmidt_match(M, N, seed) -> bool:
    left = indecomposable_summands(M, seed)
    right = indecomposable_summands(N, seed)
    if len(left) != len(right):
        return False
    used = [False] * len(right)
    for X in left:
        for j, Y in enumerate(right):
            if not used[j] and _iso_indecomposables(X, Y):
                used[j] = True
                break
        else:
            return False
    return True


def dim_vector_sum(mods) -> tuple:
    mods = list(mods)
    return tuple(sum(M.dims[v] for M in mods) for v in range(len(mods[0].dims)))


def induced_on_cokernel(proj: ModuleMap, g: ModuleMap, target_proj: ModuleMap | None = None) -> ModuleMap:
    """Map ``Cok -> Cok'`` induced by ``g`` on the ambient targets of two projections."""
    tp = proj if target_proj is None else target_proj
    F = proj.field
    mats = []
    for v, (p, q) in enumerate(zip(proj.mats, tp.mats)):
        cols = []
        for j in range(p.nrows):
            s = solve(p, _unit(F, p.nrows, j))
            cols.append(q.apply(g.mats[v].apply(s)))
        mats.append(Matrix.from_columns(F, cols, q.nrows) if cols else Matrix.zero(F, q.nrows, 0))
    return ModuleMap(proj.target, tp.target, tuple(mats))


def induced_on_kernel(incl: ModuleMap, g: ModuleMap, target_incl: ModuleMap | None = None) -> ModuleMap:
    """Map ``Ker -> Ker'`` induced by ``g`` on the ambient sources of two inclusions."""
    ti = incl if target_incl is None else target_incl
    F = incl.field
    mats = []
    for v, (i, j) in enumerate(zip(incl.mats, ti.mats)):
        coords = BasisCoords(F, j.columns(), j.nrows)
        cols = [coords(g.mats[v].apply(c)) for c in i.columns()]
        mats.append(Matrix.from_columns(F, cols, j.ncols) if cols else Matrix.zero(F, j.ncols, 0))
    return ModuleMap(incl.source, ti.source, tuple(mats))


def is_generated_by(M: Representation, X: Representation) -> bool:
    """``M`` is a quotient of a finite sum of copies of ``X``."""
    return trace(X, M).pi.is_zero()


def is_cogenerated_by(N: Representation, Y: Representation) -> bool:
    """``N`` embeds in a finite sum of copies of ``Y``."""
    H = hom_space(N, Y)
    for v in range(N.algebra.n):
        if not N.dims[v]:
            continue
        if not H:
            return False
        if vstack([f.mats[v] for f in H]).rank() < N.dims[v]:
            return False
    return True


def kron(a: Matrix, b: Matrix) -> Matrix:
    F = a.field
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append(tuple(F.reduce(x * y) for x in ra for y in rb))
    return Matrix._raw(F, a.nrows * b.nrows, a.ncols * b.ncols, tuple(rows))
