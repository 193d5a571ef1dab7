"""Exact scalars and dense linear algebra over Q and F_p.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator); residues are plain ``int`` values kept in ``[0, p)``.  Every
matrix carries its field, and mixing fields is an error.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence


class FieldMismatch(ValueError):
    pass


class Field:
    """Base class for the two supported fields."""

    p = 0

    def __call__(self, x):
        raise NotImplementedError

    def reduce(self, x):
        return x

    def inv(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def is_finite(self) -> bool:
        return self.p > 0

    def parse(self, text: str):
        return self(Fraction(text))

    def format(self, x) -> str:
        return str(x)

    def __reduce__(self):
        return (_field_from_tag, (self.tag,))


class RationalField(Field):
    tag = "Q"

    def __call__(self, x):
        return Fraction(x)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or p >= 2**63 or not _is_prime(p):
            raise ValueError(f"{p} is not a word-sized prime")
        self.p = p
        self.tag = f"F{p}"

    def __call__(self, x):
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def reduce(self, x):
        return x % self.p

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def elements(self):
        return range(self.p)

    def __repr__(self):
        return f"GF({self.p})"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def _field_from_tag(tag: str) -> Field:
    return QQ if tag == "Q" else GF(int(tag[1:]))


def same_field(*fields: Field) -> Field:
    first = fields[0]
    for f in fields[1:]:
        if f is not first:
            raise FieldMismatch(f"mixed fields {first!r} and {f!r}")
    return first


class Matrix:
    """Immutable dense matrix; ``rows`` is a tuple of row tuples."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, nrows: int, ncols: int, rows=None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            z = field.zero
            rows = tuple((z,) * ncols for _ in range(nrows))
        else:
            rows = tuple(tuple(field(x) for x in r) for r in rows)
            if len(rows) != nrows or any(len(r) != ncols for r in rows):
                raise ValueError("row data does not match the declared shape")
        self.rows = rows

    @classmethod
    def _raw(cls, field, nrows, ncols, rows):
        m = cls.__new__(cls)
        m.field, m.nrows, m.ncols, m.rows = field, nrows, ncols, rows
        return m

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], ncols: int | None = None):
        rows = list(rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence], nrows: int):
        cols = list(cols)
        rows = [[c[i] for c in cols] for i in range(nrows)]
        return cls(field, nrows, len(cols), rows)

    @classmethod
    def zero(cls, field: Field, nrows: int, ncols: int):
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field: Field, n: int):
        z, o = field.zero, field.one
        rows = tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))
        return cls._raw(field, n, n, rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field is other.field
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field.tag, self.shape, self.rows))

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.nrows}x{self.ncols}, {[list(r) for r in self.rows]})"

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        rows = tuple(tuple(r[j] for r in self.rows) for j in range(self.ncols))
        return Matrix._raw(self.field, self.ncols, self.nrows, rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        F = same_field(self.field, other.field)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        red = F.reduce
        rows = tuple(tuple(red(a + b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        return Matrix._raw(F, self.nrows, self.ncols, rows)

    def __neg__(self) -> "Matrix":
        red = self.field.reduce
        rows = tuple(tuple(red(-a) for a in r) for r in self.rows)
        return Matrix._raw(self.field, self.nrows, self.ncols, rows)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        F = self.field
        c = F(c)
        rows = tuple(tuple(F.reduce(c * a) for a in r) for r in self.rows)
        return Matrix._raw(F, self.nrows, self.ncols, rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        F = same_field(self.field, other.field)
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        red = F.reduce
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        z = F.zero
        rows = tuple(
            tuple(red(sum((a * b for a, b in zip(r, c) if a and b), z)) for c in cols)
            for r in self.rows
        )
        return Matrix._raw(F, self.nrows, other.ncols, rows)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise ValueError("vector length does not match column count")
        red = self.field.reduce
        z = self.field.zero
        return tuple(red(sum((a * b for a, b in zip(r, v) if a and b), z)) for r in self.rows)

    def rank(self) -> int:
        return rref(self)[0]

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        F = self.field
        m = [list(r) for r in self.rows]
        n = self.nrows
        d = F.one
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c] != 0), None)
            if piv is None:
                return F.zero
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                d = F.reduce(-d)
            d = F.reduce(d * m[c][c])
            inv = F.inv(m[c][c])
            for r in range(c + 1, n):
                f = m[r][c]
                if f:
                    f = F.reduce(f * inv)
                    m[r] = [F.reduce(a - f * b) for a, b in zip(m[r], m[c])]
        return d

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        aug = hstack([self, Matrix.identity(self.field, n)])
        rk, red, piv = rref(aug)
        if tuple(piv[:n]) != tuple(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Matrix._raw(self.field, n, n, tuple(r[n:] for r in red.rows[:n]))

    def power(self, k: int) -> "Matrix":
        out = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Matrix":
        rows, cols = list(rows), list(cols)
        data = tuple(tuple(self.rows[i][j] for j in cols) for i in rows)
        return Matrix._raw(self.field, len(rows), len(cols), data)

    def flat(self) -> tuple:
        return tuple(x for r in self.rows for x in r)


def hstack(mats: Sequence[Matrix]) -> Matrix:
    F = same_field(*[m.field for m in mats])
    n = mats[0].nrows
    if any(m.nrows != n for m in mats):
        raise ValueError("hstack needs equal row counts")
    rows = tuple(tuple(x for m in mats for x in m.rows[i]) for i in range(n))
    return Matrix._raw(F, n, sum(m.ncols for m in mats), rows)


def vstack(mats: Sequence[Matrix]) -> Matrix:
    F = same_field(*[m.field for m in mats])
    n = mats[0].ncols
    if any(m.ncols != n for m in mats):
        raise ValueError("vstack needs equal column counts")
    rows = tuple(r for m in mats for r in m.rows)
    return Matrix._raw(F, len(rows), n, rows)


def block_diag(field: Field, mats: Sequence[Matrix]) -> Matrix:
    nr = sum(m.nrows for m in mats)
    nc = sum(m.ncols for m in mats)
    z = field.zero
    rows = []
    c0 = 0
    for m in mats:
        same_field(field, m.field)
        for r in m.rows:
            rows.append((z,) * c0 + tuple(r) + (z,) * (nc - c0 - m.ncols))
        c0 += m.ncols
    return Matrix._raw(field, nr, nc, tuple(rows))


def _rref_rows(field: Field, rows: list[list], ncols: int):
    """In-place reduced row echelon form; returns pivot columns."""
    p = field.p
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        if p:
            inv = pow(pr[c], -1, p)
            if inv != 1:
                pr = [x * inv % p for x in pr]
                rows[r] = pr
            for i in range(nrows):
                if i != r:
                    f = rows[i][c]
                    if f:
                        rows[i] = [(a - f * b) % p for a, b in zip(rows[i], pr)]
        else:
            lead = pr[c]
            if lead != 1:
                pr = [x / lead for x in pr]
                rows[r] = pr
            for i in range(nrows):
                if i != r:
                    f = rows[i][c]
                    if f:
                        rows[i] = [a - f * b if b else a for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix):
    """Return ``(rank, reduced matrix, pivot columns)``; pivoting is first-nonzero."""
    rows = [list(r) for r in m.rows]
    pivots = _rref_rows(m.field, rows, m.ncols)
    reduced = Matrix._raw(m.field, m.nrows, m.ncols, tuple(tuple(r) for r in rows))
    return len(pivots), reduced, tuple(pivots)


def nullspace_basis(m: Matrix) -> list[tuple]:
    """Basis of ``{v : m v = 0}`` as a list of tuples (one per free column)."""
    F = m.field
    rk, red, pivots = rref(m)
    pivset = set(pivots)
    z, o = F.zero, F.one
    basis = []
    for free in range(m.ncols):
        if free in pivset:
            continue
        v = [z] * m.ncols
        v[free] = o
        for i, pc in enumerate(pivots):
            v[pc] = F.reduce(-red.rows[i][free])
        basis.append(tuple(v))
    return basis


def solve(m: Matrix, b: Sequence):
    """Some ``x`` with ``m x = b``, or ``None`` when the system is inconsistent."""
    if len(b) != m.nrows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m.nrows}")
    F = m.field
    rows = [list(r) + [F(x)] for r, x in zip(m.rows, b)]
    pivots = _rref_rows(F, rows, m.ncols + 1)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [F.zero] * m.ncols
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][m.ncols]
    return tuple(x)


def row_space(field: Field, vectors: Sequence[Sequence], ncols: int) -> list[tuple]:
    """Reduced echelon basis of the span of ``vectors``."""
    rows = [list(v) for v in vectors]
    pivots = _rref_rows(field, rows, ncols)
    return [tuple(r) for r in rows[: len(pivots)]]


def span_rank(field: Field, vectors: Sequence[Sequence], ncols: int) -> int:
    if not vectors:
        return 0
    rows = [list(v) for v in vectors]
    return len(_rref_rows(field, rows, ncols))


class Subspace:
    """A subspace of ``F^n`` in reduced echelon form, with quotient coordinates.

    Vectors are reduced against the echelon basis; the non-pivot coordinates of
    the reduced vector are the coordinates in the quotient ``F^n / W``.
    """

    def __init__(self, field: Field, n: int, vectors: Iterable[Sequence] = ()):
        self.field = field
        self.n = n
        rows = [list(v) for v in vectors]
        self.pivots = tuple(_rref_rows(field, rows, n))
        self.basis = [tuple(r) for r in rows[: len(self.pivots)]]
        piv = set(self.pivots)
        self.free = tuple(j for j in range(n) if j not in piv)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def codim(self) -> int:
        return self.n - self.dim

    def reduce(self, v: Sequence) -> list:
        F = self.field
        v = list(v)
        for row, pc in zip(self.basis, self.pivots):
            f = v[pc]
            if f:
                v = [F.reduce(a - f * b) for a, b in zip(v, row)]
        return v

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def quotient_coords(self, v: Sequence) -> tuple:
        r = self.reduce(v)
        return tuple(r[j] for j in self.free)

    def lift(self, coords: Sequence) -> tuple:
        """Representative in ``F^n`` of a quotient vector (supported on free columns)."""
        v = [self.field.zero] * self.n
        for j, c in zip(self.free, coords):
            v[j] = c
        return tuple(v)

    def coordinates(self, v: Sequence):
        """Coefficients of ``v`` in :attr:`basis`, or None when ``v`` is outside."""
        if not self.contains(v):
            return None
        return tuple(v[pc] for pc in self.pivots)


def vector_space(field: Field, n: int):
    """Every vector of ``F_p^n`` (finite fields only)."""
    if not field.is_finite:
        raise ValueError("cannot enumerate a vector space over Q")
    return product(range(field.p), repeat=n)
