"""Quivers, paths and finite-dimensional path algebras with relations.

Composition is function-style throughout: the written product ``b*a`` (or
the path tuple ``(b, a)``) means "first ``a``, then ``b``".  With this
convention the relations ``beta*alpha = 0`` of the 4-cycle example kill the
composite 1 -> 2 -> 3.  Reversing it silently changes every fixture, so
everything that builds or reads paths goes through :class:`Path`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import Field, Subspace

DEFAULT_MAX_LENGTH = 32

_IDEMPOTENT = re.compile(r"^e(\d+)$")


@dataclass(frozen=True)
class Quiver:
    n: int
    arrows: tuple  # of (name, source, target), vertices 1-based

    def __post_init__(self):
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow names must be unique")
        for name, s, t in self.arrows:
            if not (1 <= s <= self.n and 1 <= t <= self.n):
                raise ValueError(f"arrow {name} has an endpoint outside 1..{self.n}")
            if _IDEMPOTENT.match(name) or not re.match(r"^[^\s*+]+$", name):
                raise ValueError(f"illegal arrow name {name!r}")

    def arrow_index(self, name: str) -> int:
        for k, a in enumerate(self.arrows):
            if a[0] == name:
                return k
        raise KeyError(f"unknown arrow {name!r}")

    def source(self, k: int) -> int:
        return self.arrows[k][1]

    def target(self, k: int) -> int:
        return self.arrows[k][2]

    def name(self, k: int) -> str:
        return self.arrows[k][0]

    def reversed(self) -> "Quiver":
        return Quiver(self.n, tuple((nm, t, s) for nm, s, t in self.arrows))

    def arrows_into(self, v: int) -> list[int]:
        return [k for k, a in enumerate(self.arrows) if a[2] == v]

    def arrows_out_of(self, v: int) -> list[int]:
        return [k for k, a in enumerate(self.arrows) if a[1] == v]


@dataclass(frozen=True)
class Path:
    """A path; ``arrows`` is in written order (the last entry is applied first)."""

    source: int
    target: int
    arrows: tuple = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    def key(self):
        return (len(self.arrows), self.arrows, self.source)

    def __mul__(self, other: "Path"):
        """``self * other`` = other first, then self; None if not composable."""
        if other.target != self.source:
            return None
        return Path(other.source, self.target, self.arrows + other.arrows)

    def reversed(self) -> "Path":
        return Path(self.target, self.source, tuple(reversed(self.arrows)))

    def label(self, quiver: Quiver) -> str:
        if not self.arrows:
            return f"e{self.source}"
        return "*".join(quiver.name(k) for k in self.arrows)


def arrow_path(quiver: Quiver, k: int) -> Path:
    return Path(quiver.source(k), quiver.target(k), (k,))


def parse_path(quiver: Quiver, text: str) -> Path:
    """Parse ``a3*a2*a1`` or ``e<i>`` into a :class:`Path`."""
    text = text.strip()
    m = _IDEMPOTENT.match(text)
    if m:
        v = int(m.group(1))
        if not 1 <= v <= quiver.n:
            raise ValueError(f"vertex {v} out of range")
        return Path(v, v)
    parts = [p.strip() for p in text.split("*")]
    path = None
    for name in reversed(parts):
        step = arrow_path(quiver, quiver.arrow_index(name))
        if path is None:
            path = step
        else:
            nxt = step * path
            if nxt is None:
                raise ValueError(f"path {text!r} is not composable")
            path = nxt
    return path


def parse_linear_combination(quiver: Quiver, field: Field, text: str) -> list:
    """Parse ``[c*]path + [c*]path ...`` into ``[(coef, Path), ...]``."""
    terms = []
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError(f"empty term in {text!r}")
        coef = field.one
        head, _, rest = chunk.partition("*")
        if rest and _is_scalar(head):
            coef = field(Fraction(head))
            chunk = rest
        elif _is_scalar(chunk):
            raise ValueError(f"bare scalar {chunk!r} is not a path term")
        terms.append((coef, parse_path(quiver, chunk)))
    return terms


def _is_scalar(s: str) -> bool:
    return re.match(r"^-?\d+(/\d+)?$", s.strip()) is not None


def _all_paths(quiver: Quiver, max_len: int) -> list[list[Path]]:
    """Paths grouped by length ``0..max_len``, each level in length-lex order."""
    by_len = [[Path(v, v) for v in range(1, quiver.n + 1)]]
    arrows = [arrow_path(quiver, k) for k in range(len(quiver.arrows))]
    if max_len >= 1:
        by_len.append(sorted(arrows, key=Path.key))
    while len(by_len) <= max_len:
        nxt = [a * p for p in by_len[-1] for a in arrows if p.target == a.source]
        by_len.append(sorted(nxt, key=Path.key))
    return by_len


class Algebra:
    """A finite-dimensional quotient ``kQ / I`` with an explicit path basis.

    Elements are coordinate tuples over :attr:`basis`.  ``mult[i][j]`` is the
    sparse product ``basis[i] * basis[j]`` as ``{k: coefficient}``.
    """

    def __init__(self, quiver, field, relations, basis, mult, reducer, max_length=DEFAULT_MAX_LENGTH):
        self.quiver = quiver
        self.field = field
        self.relations = tuple(relations)
        self.basis = tuple(basis)
        self.index = {p: i for i, p in enumerate(self.basis)}
        self.mult = mult
        self._reducer = reducer
        self.max_length = max_length
        self._opposite = None

    def __repr__(self):
        return f"<Algebra n={self.n} dim={self.dim} over {self.field!r}>"

    @property
    def n(self) -> int:
        return self.quiver.n

    @property
    def dim(self) -> int:
        return len(self.basis)

    def zero(self) -> tuple:
        return (self.field.zero,) * self.dim

    def idempotent(self, v: int) -> tuple:
        return self.path_vector(Path(v, v))

    def one(self) -> tuple:
        F = self.field
        out = [F.zero] * self.dim
        for v in range(1, self.n + 1):
            out[self.index[Path(v, v)]] = F.one
        return tuple(out)

    def path_vector(self, path: Path) -> tuple:
        """Normal form of a single path."""
        return self._reducer(path)

    def element(self, terms: Iterable) -> tuple:
        F = self.field
        out = [F.zero] * self.dim
        for c, path in terms:
            v = self.path_vector(path)
            for k, x in enumerate(v):
                if x:
                    out[k] = F.reduce(out[k] + c * x)
        return tuple(out)

    def parse_element(self, text: str) -> tuple:
        return self.element(parse_linear_combination(self.quiver, self.field, text))

    def format_element(self, x: Sequence) -> str:
        terms = []
        for k, c in enumerate(x):
            if c:
                lab = self.basis[k].label(self.quiver)
                terms.append(lab if c == 1 else f"{self.field.format(c)}*{lab}")
        return " + ".join(terms) if terms else "0"

    def mul(self, x: Sequence, y: Sequence) -> tuple:
        F = self.field
        out = [F.zero] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.mult[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                for k, c in row[j].items():
                    out[k] += a * b * c
        return tuple(F.reduce(v) for v in out)

    def add(self, x, y) -> tuple:
        return tuple(self.field.reduce(a + b) for a, b in zip(x, y))

    def scale(self, c, x) -> tuple:
        return tuple(self.field.reduce(c * a) for a in x)

    def basis_indices(self, source: int | None = None, target: int | None = None) -> list[int]:
        return [
            i
            for i, p in enumerate(self.basis)
            if (source is None or p.source == source) and (target is None or p.target == target)
        ]

    def in_corner(self, x: Sequence, target: int, source: int) -> bool:
        """True iff ``x`` lies in ``e_target A e_source``."""
        return all(
            not c or (self.basis[k].target == target and self.basis[k].source == source)
            for k, c in enumerate(x)
        )

    def arrow_index_in_basis(self, k: int) -> int:
        return self.index[arrow_path(self.quiver, k)]

    def opposite(self) -> "Algebra":
        if self._opposite is None:
            op = Algebra(
                self.quiver.reversed(),
                self.field,
                [[(c, p.reversed()) for c, p in rel] for rel in self.relations],
                [p.reversed() for p in self.basis],
                [[self.mult[j][i] for j in range(self.dim)] for i in range(self.dim)],
                lambda path: self._reducer(path.reversed()),
                self.max_length,
            )
            op._opposite = self
            self._opposite = op
        return self._opposite

    def check_associative(self) -> bool:
        d = self.dim
        e = [tuple(self.field.one if k == i else self.field.zero for k in range(d)) for i in range(d)]
        for i in range(d):
            for j in range(d):
                ij = self.mul(e[i], e[j])
                for k in range(d):
                    if self.mul(ij, e[k]) != self.mul(e[i], self.mul(e[j], e[k])):
                        return False
        return True


def _normalize_relation(quiver: Quiver, field: Field, rel) -> list:
    if isinstance(rel, str):
        rel = parse_linear_combination(quiver, field, rel)
    terms: dict[Path, object] = {}
    for c, p in rel:
        if isinstance(p, str):
            p = parse_path(quiver, p)
        terms[p] = field.reduce(terms.get(p, field.zero) + field(c))
    terms = {p: c for p, c in terms.items() if c}
    if not terms:
        raise ValueError("relation is identically zero")
    ends = {(p.source, p.target) for p in terms}
    if len(ends) != 1:
        raise ValueError("relation terms are not parallel paths")
    if min(p.length for p in terms) < 2:
        raise ValueError("relation has a term of length < 2 (not admissible)")
    return sorted(((c, p) for p, c in terms.items()), key=lambda t: t[1].key())


def _ideal_span(field, relations, paths_upto, index, maxlen):
    """Span of ``u r v`` truncated to paths of length <= maxlen."""
    n = len(index)
    gens = []
    flat = [p for lvl in paths_upto for p in lvl]
    for rel in relations:
        rmin = min(p.length for _, p in rel)
        src, tgt = rel[0][1].source, rel[0][1].target
        us = [u for u in flat if u.source == tgt and u.length + rmin <= maxlen]
        vs = [v for v in flat if v.target == src and v.length + rmin <= maxlen]
        for u in us:
            for v in vs:
                if u.length + v.length + rmin > maxlen:
                    continue
                vec = [field.zero] * n
                for c, p in rel:
                    q = u * p * v
                    if q.length <= maxlen:
                        vec[index[q]] = field.reduce(vec[index[q]] + c)
                if any(vec):
                    gens.append(vec)
    return gens


def build_algebra(quiver: Quiver, relations: Sequence, field: Field, max_length: int = DEFAULT_MAX_LENGTH) -> Algebra:
    """Path algebra ``kQ/I`` for admissible relations.

    The nilpotency length ``L`` is found as the first ``l`` with every path of
    length ``l`` in ``I + J^(l+1)``; for admissible ``I`` this forces
    ``J^L`` inside ``I``.  If no such ``l <= max_length`` exists the quotient
    is reported as infinite-dimensional.
    """
    rels = [_normalize_relation(quiver, field, r) for r in relations]
    L = None
    for ell in range(1, max_length + 1):
        paths = _all_paths(quiver, ell)
        if not paths[ell]:
            L = ell
            break
        upto = paths[: ell + 1]
        flat = [p for lvl in upto for p in lvl]
        index = {p: i for i, p in enumerate(flat)}
        W = Subspace(field, len(flat), _ideal_span(field, rels, upto, index, ell))
        if all(W.contains(_unit(field, len(flat), index[p])) for p in paths[ell]):
            L = ell
            break
    if L is None:
        raise ValueError(
            f"infinite-dimensional or bound too low: live paths of length {max_length}"
        )

    upto = paths[:L]
    flat = [p for lvl in upto for p in lvl]
    # columns ordered largest-first so that pivots land on the longest paths
    order = sorted(flat, key=Path.key, reverse=True)
    index = {p: i for i, p in enumerate(order)}
    W = Subspace(field, len(order), _ideal_span(field, rels, upto, index, L - 1))
    basis = sorted((order[j] for j in W.free), key=Path.key)
    free_pos = {order[j]: k for k, j in enumerate(W.free)}
    bidx = [free_pos[p] for p in basis]  # position in quotient coords, per basis elt
    inv = {qpos: bi for bi, qpos in enumerate(bidx)}

    cache: dict = {}

    def reducer(path: Path) -> tuple:
        if path in cache:
            return cache[path]
        out = [field.zero] * len(basis)
        if path.length < L:
            if path not in index:
                raise ValueError(f"path {path} not in the quiver")
            q = W.quotient_coords(_unit(field, len(order), index[path]))
            for qpos, c in enumerate(q):
                if c:
                    out[inv[qpos]] = c
        res = tuple(out)
        cache[path] = res
        return res

    d = len(basis)
    mult = []
    for i in range(d):
        row = []
        for j in range(d):
            q = basis[i] * basis[j]
            if q is None:
                row.append({})
            else:
                vec = reducer(q)
                row.append({k: c for k, c in enumerate(vec) if c})
        mult.append(row)
    return Algebra(quiver, field, rels, basis, mult, reducer, max_length)


def _unit(field, n, i):
    v = [field.zero] * n
    v[i] = field.one
    return v
