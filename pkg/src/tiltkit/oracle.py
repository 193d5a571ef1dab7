"""Brute-force module inventories over a finite field.

Every representation with dimension vector below a bound is generated arrow
by arrow (pruning as soon as a relation's arrows are all fixed).  Iso classes
are the orbits of ``prod_v GL(d_v, p)`` acting by ``M_a -> g_t M_a g_s^-1``;
each orbit is represented by its smallest code, so the inventory is
exhaustive and duplicate-free by construction.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import product

from .linalg import Matrix
from .modules import Representation, indecomposable_summands
from .quiver import Algebra

DEFAULT_BUDGET = 10**7


class OracleError(ValueError):
    pass


def budget_from_env() -> int:
    raw = os.environ.get("TILT_BUDGET")
    if not raw:
        return DEFAULT_BUDGET
    try:
        return int(float(raw))
    except ValueError as exc:
        raise OracleError(f"TILT_BUDGET is not a number: {raw!r}") from exc


# ---------------------------------------------------------------- small matrices mod p


def _decode(code: int, r: int, c: int, p: int) -> tuple:
    out = []
    for _ in range(r * c):
        out.append(code % p)
        code //= p
    out.reverse()
    return tuple(tuple(out[i * c:(i + 1) * c]) for i in range(r))


def _encode(m, p: int) -> int:
    code = 0
    for row in m:
        for x in row:
            code = code * p + x
    return code


def _mul(a, b, p):
    # callers only pass matrices with every dimension positive
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % p for col in cols) for row in a)


@lru_cache(maxsize=None)
def _gl(d: int, p: int) -> tuple:
    """All invertible ``d x d`` matrices mod ``p`` with their inverses, identity first."""
    from .linalg import GF

    F = GF(p)
    out = []
    ident = tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))
    out.append((ident, ident))
    for code in range(p ** (d * d)):
        m = _decode(code, d, d, p)
        if m == ident:
            continue
        M = Matrix(F, d, d, m)
        if M.is_invertible():
            inv = M.inverse()
            out.append((m, tuple(tuple(int(x) for x in r) for r in inv.rows)))
    return tuple(out)


@lru_cache(maxsize=None)
def _action_table(dt: int, ds: int, p: int) -> tuple:
    """``table[gt][gs][code]`` = code of ``g_t M g_s^-1``."""
    glt, gls = _gl(dt, p), _gl(ds, p)
    if dt == 0 or ds == 0:
        return tuple(tuple((0,) for _ in gls) for _ in glt)
    mats = [_decode(c, dt, ds, p) for c in range(p ** (dt * ds))]
    table = []
    for gt, _ in glt:
        left = [_mul(gt, m, p) for m in mats]
        row = []
        for _, gsi in gls:
            row.append(tuple(_encode(_mul(lm, gsi, p), p) for lm in left))
        table.append(tuple(row))
    return tuple(table)


# ---------------------------------------------------------------- enumeration


def dimension_vectors(bound) -> list[tuple]:
    return [tuple(d) for d in product(*(range(b + 1) for b in bound))]


def regular_bound(A: Algebra) -> tuple:
    """Dimension vector of ``A`` as a left module."""
    out = [0] * A.n
    for p in A.basis:
        out[p.target - 1] += 1
    return tuple(out)


def candidate_count(A: Algebra, bound) -> int:
    p = A.field.p
    q = A.quiver
    total = 0
    for d in dimension_vectors(bound):
        total += p ** sum(d[s - 1] * d[t - 1] for _, s, t in q.arrows)
    return total


def _relations_by_last_arrow(A: Algebra):
    """Relations indexed by the largest arrow index they mention."""
    out = {}
    for rel in A.relations:
        last = max(k for _, path in rel for k in path.arrows)
        out.setdefault(last, []).append([(int(c), path) for c, path in rel])
    return out


def _relation_holds(rel, mats, d, ends, p) -> bool:
    s, t = rel[0][1].source, rel[0][1].target
    if not d[s - 1] or not d[t - 1]:
        return True
    acc = [[0] * d[s - 1] for _ in range(d[t - 1])]
    for c, path in rel:
        if any(not d[ends[k]] for k in path.arrows):
            continue  # passes through a zero space
        m = mats[path.arrows[-1]]
        for k in reversed(path.arrows[:-1]):
            m = _mul(mats[k], m, p)
        for i in range(d[t - 1]):
            for j in range(d[s - 1]):
                acc[i][j] = (acc[i][j] + c * m[i][j]) % p
    return not any(any(r) for r in acc)


def representations_with_dims(A: Algebra, d) -> list[tuple]:
    """All arrow-code tuples with dimension vector ``d`` satisfying the relations, ascending."""
    p = A.field.p
    q = A.quiver
    shapes = [(d[t - 1], d[s - 1]) for _, s, t in q.arrows]
    by_last = _relations_by_last_arrow(A)
    ends = [t - 1 for _, _, t in q.arrows]
    out = []
    codes = [0] * len(shapes)
    mats = [None] * len(shapes)

    def rec(k):
        if k == len(shapes):
            out.append(tuple(codes))
            return
        r, c = shapes[k]
        for code in range(p ** (r * c)):
            codes[k] = code
            mats[k] = _decode(code, r, c, p)
            if all(_relation_holds(rel, mats, d, ends, p) for rel in by_last.get(k, ())):
                rec(k + 1)

    rec(0)
    return out


def orbit_representatives(A: Algebra, d, budget: int | None = None) -> list[tuple]:
    p = A.field.p
    q = A.quiver
    valid = representations_with_dims(A, d)
    if not q.arrows:
        return valid[:1]
    gls = [_gl(x, p) for x in d]
    group = 1
    for g in gls:
        group *= len(g)
    if budget is not None and group * len(valid) > budget * 10:
        raise OracleError(f"budget exceeded at dimension vector {d}: group of order {group}")
    tables = [_action_table(d[t - 1], d[s - 1], p) for _, s, t in q.arrows]
    ends = [(s - 1, t - 1) for _, s, t in q.arrows]
    seen = set()
    reps = []
    ranges = [range(len(g)) for g in gls]
    for code in valid:
        if code in seen:
            continue
        reps.append(code)
        for g in product(*ranges):
            img = tuple(tables[k][g[t]][g[s]][code[k]] for k, (s, t) in enumerate(ends))
            seen.add(img)
    return reps


def _to_representation(A: Algebra, d, code) -> Representation:
    F = A.field
    p = F.p
    maps = []
    for k, (_, s, t) in enumerate(A.quiver.arrows):
        r, c = d[t - 1], d[s - 1]
        maps.append(Matrix(F, r, c, _decode(code[k], r, c, p)))
    return Representation(A, d, maps)


@dataclass
class ModuleInventory:
    algebra: Algebra
    bound: tuple
    representatives: list
    candidates: int
    flags: dict = dc_field(default_factory=dict)  # index -> {name: bool}

    def __len__(self):
        return len(self.representatives)

    def nonzero(self):
        return [M for M in self.representatives if not M.is_zero()]

    def indecomposables(self, seed: int = 0):
        out = []
        for i, M in enumerate(self.representatives):
            fl = self.flags.setdefault(i, {})
            if "indecomposable" not in fl:
                fl["indecomposable"] = (not M.is_zero()) and len(indecomposable_summands(M, seed)) == 1
            if fl["indecomposable"]:
                out.append(M)
        return out

    def classify(self, P) -> list[dict]:
        """Per representative: membership in the two classes of ``P``."""
        from .torsion import ClassMembership

        cm = ClassMembership(P)
        out = []
        for i, M in enumerate(self.representatives):
            fl = self.flags.setdefault(i, {})
            fl["in_X"] = cm.in_X(M)
            fl["in_Y"] = cm.in_Y(M)
            out.append(fl)
        return out


def enumerate_modules(A: Algebra, bound=None, budget: int | None = None) -> ModuleInventory:
    """All modules with dimension vector ``<= bound`` up to isomorphism."""
    F = A.field
    if not F.is_finite:
        raise OracleError("enumeration needs a finite field; over Q there are infinitely many modules")
    bound = tuple(regular_bound(A) if bound is None else bound)
    if len(bound) != A.n:
        raise OracleError(f"bound has {len(bound)} entries, expected {A.n}")
    budget = budget_from_env() if budget is None else budget
    p = F.p
    total = 0
    for d in dimension_vectors(bound):
        total += p ** sum(d[s - 1] * d[t - 1] for _, s, t in A.quiver.arrows)
        if total > budget:
            raise OracleError(f"budget of {budget} candidates exceeded at dimension vector {d}")
    reps = []
    for d in sorted(dimension_vectors(bound), key=lambda v: (sum(v), v)):
        for code in orbit_representatives(A, d, budget):
            reps.append(_to_representation(A, d, code))
    for i, M in enumerate(reps):
        M.name = f"M{i + 1}"
    return ModuleInventory(A, bound, reps, total)


def search_intersection(P, inventory: ModuleInventory):
    """First nonzero representative lying in both classes of ``P``, or None."""
    from .torsion import ClassMembership

    cm = ClassMembership(P)
    for M in inventory.representatives:
        if not M.is_zero() and cm.in_Y(M) and cm.in_X(M):
            return M
    return None
