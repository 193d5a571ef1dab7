"""Quiver-with-relations presentation of a finite-dimensional algebra.

Given an algebra by structure constants, pick primitive orthogonal
idempotents, keep one per isomorphism class (the basic part ``eBe``), read
arrows ``i -> j`` off ``e_j (J/J^2) e_i`` and recover the relations as the
kernel of the induced map from the path algebra.
"""
from __future__ import annotations

from dataclasses import dataclass

from .linalg import Matrix, Subspace, nullspace_basis
from .quiver import Algebra, Path, Quiver, _all_paths, _ideal_span, build_algebra
from .structalg import BasisCoords, FDAlgebra, LocalRingError


class PresentationError(ValueError):
    pass


@dataclass
class QuiverPresentation:
    quiver: Quiver
    relations: list  # of [(coef, Path)]
    algebra: Algebra  # the rebuilt path algebra
    idempotents: list  # vertex i -> idempotent of the source algebra
    arrow_elements: list  # arrow k -> element of e_t B e_s
    path_images: list  # basis path of `algebra` -> element of the source algebra
    nilpotency: int
    source: FDAlgebra
    coords: object  # source element -> coordinates over `algebra`

    @property
    def arrow_list(self) -> list[tuple[int, int]]:
        return sorted((s, t) for _, s, t in self.quiver.arrows)

    @property
    def relation_degree(self) -> int:
        return max((p.length for rel in self.relations for _, p in rel), default=0)

    def to_source(self, x) -> tuple:
        """Image in the source algebra of an element of the rebuilt algebra."""
        B = self.source
        out = B.zero()
        for c, img in zip(x, self.path_images):
            if c:
                out = B.add(out, B.scale(c, img))
        return out

    def from_source(self, y) -> tuple:
        return self.coords(y)


def _corner_dims(B: FDAlgebra, es):
    return [[len(B.corner_basis(ei, ej)) for ej in es] for ei in es]


def _canonical_order(B: FDAlgebra, es, keys=None):
    """Vertex order: components by size (desc) then smallest key; inside, by projective dim then key."""
    n = len(es)
    keys = list(range(n)) if keys is None else keys
    dims = _corner_dims(B, es)
    adj = {i: set() for i in range(n)}
    for i in range(n):
        for j in range(n):
            if i != j and (dims[i][j] or dims[j][i]):
                adj[i].add(j)
                adj[j].add(i)
    seen, comps = set(), []
    for i in range(n):
        if i in seen:
            continue
        stack, comp = [i], []
        seen.add(i)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    comps.sort(key=lambda c: (-len(c), min(keys[i] for i in c)))
    # B e_i has dimension sum_j dim e_j B e_i
    proj_dim = [sum(dims[j][i] for j in range(n)) for i in range(n)]
    order = []
    for c in comps:
        order.extend(sorted(c, key=lambda i: (proj_dim[i], keys[i])))
    return order


def present_as_quiver_algebra(
    B: FDAlgebra, seed: int = 0, arrow_prefix: str = "b", vertex_key=None
) -> QuiverPresentation:
    """Basic quiver presentation of ``B`` (requires all residue fields to be the base field).

    ``vertex_key(e)`` breaks ties between vertices the structure alone cannot order.
    """
    F = B.field
    if B.dim == 0:
        q = Quiver(0, ())
        return QuiverPresentation(q, [], build_algebra(q, [], F), [], [], [], 0, B, lambda y: ())
    prims = B.primitive_idempotents(seed)
    reps = []
    for e in prims:
        if not any(B.are_isomorphic_idempotents(e, f) for f in reps):
            reps.append(e)
    keys = [vertex_key(e) for e in reps] if vertex_key else None
    order = _canonical_order(B, reps, keys)
    es = [reps[i] for i in order]
    n = len(es)

    # radical of the basic part eBe
    jgens = []
    corner = {}
    for i in range(n):
        for j in range(n):
            cb = B.corner_basis(es[i], es[j])
            corner[i, j] = cb
            if i != j:
                jgens.extend(cb)
            else:
                for x in cb:
                    try:
                        lam = B.residue_scalar(x, es[i])
                    except LocalRingError as exc:
                        raise PresentationError(str(exc)) from exc
                    y = B.sub(x, B.scale(lam, es[i]))
                    if any(y):
                        jgens.append(y)
    J = Subspace(F, B.dim, jgens)
    Jb = list(J.basis)
    J2 = Subspace(F, B.dim, [B.mul(x, y) for x in Jb for y in Jb])

    # arrows i -> j from e_j (J / J^2) e_i
    arrows, arrow_elems = [], []
    for i in range(n):
        for j in range(n):
            piece = [B.mul(B.mul(es[j], x), es[i]) for x in Jb]
            acc = Subspace(F, B.dim, J2.basis)
            for x in Subspace(F, B.dim, piece).basis:
                if not acc.contains(x):
                    arrows.append((i + 1, j + 1))
                    arrow_elems.append(x)
                    acc = Subspace(F, B.dim, list(acc.basis) + [x])
    named = tuple((f"{arrow_prefix}{k + 1}", s, t) for k, (s, t) in enumerate(arrows))
    quiver = Quiver(n, named)

    # nilpotency of J
    L, power = 1, Jb
    while power:
        power = Subspace(F, B.dim, [B.mul(x, y) for x in power for y in Jb]).basis
        L += 1

    paths = [p for lvl in _all_paths(quiver, L) for p in lvl]
    eBe_span = Subspace(F, B.dim, [v for i in range(n) for j in range(n) for v in corner[i, j]])

    def image(p: Path):
        if not p.arrows:
            return tuple(es[p.source - 1])
        out = arrow_elems[p.arrows[0]]
        for k in p.arrows[1:]:
            out = B.mul(out, arrow_elems[k])
        return out

    images = {p: image(p) for p in paths}
    long_paths = [p for p in paths if p.length >= 2]
    relations = _minimal_relations(F, quiver, long_paths, images, B.dim, L)
    Lam = build_algebra(quiver, relations, F)
    if Lam.dim != eBe_span.dim:
        raise PresentationError(
            f"rebuilt algebra has dimension {Lam.dim}, expected {eBe_span.dim}"
        )
    path_images = [image(p) for p in Lam.basis]
    coords = BasisCoords(F, path_images, B.dim)
    return QuiverPresentation(quiver, Lam.relations, Lam, es, arrow_elems, path_images, L, B, coords)


def _minimal_relations(F, quiver, paths, images, dim, L):
    """Generators of the kernel of ``paths -> B``, added greedily by length."""
    if not paths:
        return []
    cols = [images[p] for p in paths]
    M = Matrix.from_columns(F, cols, dim)
    kern = nullspace_basis(M)
    cands = []
    for v in kern:
        rel = [(c, paths[i]) for i, c in enumerate(v) if c]
        # split into parallel components; each is itself in the kernel
        by_end = {}
        for c, p in rel:
            by_end.setdefault((p.source, p.target), []).append((c, p))
        cands.extend(by_end.values())
    cands.sort(key=lambda r: (max(p.length for _, p in r), min(p.key() for _, p in r)))
    chosen = []
    levels = _all_paths(quiver, L)
    flat = [p for lvl in levels for p in lvl]
    index = {p: i for i, p in enumerate(flat)}
    for rel in cands:
        span = Subspace(F, len(flat), _ideal_span(F, chosen, levels, index, L)) if chosen else Subspace(F, len(flat))
        vec = [F.zero] * len(flat)
        for c, p in rel:
            vec[index[p]] = c
        if not span.contains(vec):
            chosen.append(sorted(rel, key=lambda t: t[1].key()))
    return chosen


def present_endomorphism_algebra(P, seed: int = 0) -> QuiverPresentation:
    """Quiver of ``End_K(P)^op``, vertices tie-broken by the K0 class of the summand (largest first)."""
    from .complexes import endomorphism_algebra, k0_class

    E = endomorphism_algebra(P)
    return present_as_quiver_algebra(
        E.algebra, seed, vertex_key=lambda e: tuple(-x for x in k0_class(P, e))
    )
