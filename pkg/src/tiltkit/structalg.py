"""Finite-dimensional algebras given by structure constants.

Used for endomorphism rings: splitting the unit into primitive orthogonal
idempotents, and recognising local corner rings.  Splitting works in every
characteristic: an element whose minimal polynomial has two coprime factors
yields an idempotent by the Chinese remainder theorem.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

import sympy

from .linalg import Field, Matrix, _rref_rows, row_space, solve

EXHAUSTIVE_LIMIT = 4096
RANDOM_TRIES = 48


class LocalRingError(ValueError):
    pass


class BasisCoords:
    """Coefficients of vectors with respect to a fixed independent list."""

    def __init__(self, field: Field, vectors, n: int):
        self.field = field
        self.k = len(vectors)
        self.n = n
        if self.k:
            rows = [list(v) + [field.one if i == j else field.zero for j in range(self.k)]
                    for i, v in enumerate(vectors)]
            piv = _rref_rows(field, rows, n)
            if len(piv) != self.k:
                raise ValueError("vectors are not independent")
            self.pivots = piv
            self.rows = rows
        else:
            self.pivots, self.rows = [], []

    def __call__(self, v):
        F = self.field
        out = [F.zero] * self.k
        rem = list(v)
        for row, pc in zip(self.rows, self.pivots):
            f = rem[pc]
            if f:
                for j in range(self.k):
                    out[j] = F.reduce(out[j] + f * row[self.n + j])
                rem = [F.reduce(a - f * b) for a, b in zip(rem, row[: self.n])]
        if any(rem):
            raise ValueError("vector is outside the span")
        return tuple(out)


class FDAlgebra:
    """Basis ``0..dim-1``; ``table[i][j]`` is the product as a coordinate tuple."""

    def __init__(self, field: Field, table, unit):
        self.field = field
        self.dim = len(unit)
        self.table = table
        self.unit = tuple(unit)

    def zero(self):
        return (self.field.zero,) * self.dim

    def basis_vector(self, i):
        F = self.field
        return tuple(F.one if k == i else F.zero for k in range(self.dim))

    def mul(self, x, y):
        F = self.field
        out = [F.zero] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(self.table[i][j]):
                    if c:
                        out[k] += ab * c
        return tuple(F.reduce(v) for v in out)

    def add(self, x, y):
        return tuple(self.field.reduce(a + b) for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple(self.field.reduce(a - b) for a, b in zip(x, y))

    def scale(self, c, x):
        return tuple(self.field.reduce(c * a) for a in x)

    def is_idempotent(self, e) -> bool:
        return self.mul(e, e) == tuple(e)

    def corner_basis(self, e, f):
        """Echelon basis of ``e A f``."""
        vecs = [self.mul(self.mul(e, self.basis_vector(i)), f) for i in range(self.dim)]
        return row_space(self.field, vecs, self.dim)

    def power(self, x, k, e):
        out = tuple(e)
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def minpoly(self, x, e=None):
        """Monic minimal polynomial (low-to-high coefficients) of ``x`` in ``eAe``."""
        F = self.field
        e = self.unit if e is None else tuple(e)
        powers = [e]
        while True:
            nxt = self.mul(powers[-1], x)
            A = Matrix.from_columns(F, powers, self.dim)
            sol = solve(A, nxt)
            if sol is not None:
                return [F.reduce(-c) for c in sol] + [F.one]
            powers.append(nxt)

    def poly_eval(self, coeffs, x, e):
        out = self.zero()
        pw = tuple(e)
        for c in coeffs:
            if c:
                out = self.add(out, self.scale(c, pw))
            pw = self.mul(pw, x)
        return out

    def is_nilpotent(self, x, e=None) -> bool:
        mp = self.minpoly(x, e)
        return all(c == 0 for c in mp[:-1])

    def is_unit_in(self, x, e=None) -> bool:
        return self.minpoly(x, e)[0] != 0

    def _candidates(self, corner, rng):
        F = self.field
        k = len(corner)
        if F.is_finite and F.p ** k <= EXHAUSTIVE_LIMIT:
            for coeffs in product(range(F.p), repeat=k):
                if any(coeffs):
                    yield _combo(F, coeffs, corner), True
            return
        for v in corner:
            yield tuple(v), False
        for _ in range(RANDOM_TRIES):
            if F.is_finite:
                coeffs = [rng.randrange(F.p) for _ in range(k)]
            else:
                coeffs = [F(rng.randint(-3, 3)) for _ in range(k)]
            yield _combo(F, coeffs, corner), False

    def split_idempotent(self, e, rng):
        """Orthogonal idempotents ``(e1, e2)`` with ``e1 + e2 = e``, or None if none found."""
        corner = self.corner_basis(e, e)
        if len(corner) <= 1:
            return None
        for y, exhaustive in self._candidates(corner, rng):
            mp = self.minpoly(y, e)
            parts = _fitting_split(mp)
            if parts is None and not exhaustive:
                parts = _factor_split(self.field, mp)
            if parts is None:
                continue
            g, h = parts
            s, _t = _poly_bezout(self.field, g, h)
            eps = self.poly_eval(_poly_mul(self.field, s, g), y, e)
            other = self.sub(e, eps)
            if any(eps) and any(other):
                return eps, other
        return None

    def primitive_idempotents(self, seed: int = 0, start=None):
        rng = random.Random(seed)
        stack = [tuple(self.unit if start is None else start)]
        out = []
        while stack:
            e = stack.pop()
            if not any(e):
                continue
            parts = self.split_idempotent(e, rng)
            if parts is None:
                out.append(e)
            else:
                stack.extend(reversed(parts))
        return out

    def residue_scalar(self, x, e):
        """``lam`` with ``x - lam*e`` nilpotent in the local ring ``eAe``.

        Raises LocalRingError if the residue field is bigger than the base field.
        """
        F = self.field
        mp = self.minpoly(x, e)
        d = len(mp) - 1
        cands = F.elements() if F.is_finite else [F.reduce(-mp[d - 1] / d)]
        for lam in cands:
            if self.is_nilpotent(self.sub(x, self.scale(lam, e)), e):
                return F(lam)
        raise LocalRingError("residue field of a local corner is a proper extension")

    def are_isomorphic_idempotents(self, e, f) -> bool:
        """For primitive ``e, f``: some ``x in eAf``, ``y in fAe`` with ``xy`` a unit of ``eAe``."""
        xs = self.corner_basis(e, f)
        ys = self.corner_basis(f, e)
        for x in xs:
            for y in ys:
                if self.is_unit_in(self.mul(x, y), e):
                    return True
        return False


def _combo(F, coeffs, vecs):
    out = [F.zero] * len(vecs[0])
    for c, v in zip(coeffs, vecs):
        if c:
            for i, a in enumerate(v):
                if a:
                    out[i] = F.reduce(out[i] + c * a)
    return tuple(out)


def _fitting_split(mp):
    """``t^m * h`` with ``m >= 1``, ``h(0) != 0``, ``deg h >= 1``; else None."""
    m = 0
    while m < len(mp) and mp[m] == 0:
        m += 1
    if m == 0 or m == len(mp) - 1:
        return None
    tm = [0] * m + [1]
    return tm, mp[m:]


def _factor_split(F: Field, mp):
    if len(mp) <= 2:
        return None
    t = sympy.Symbol("t")
    coeffs = list(reversed(mp))
    if F.is_finite:
        poly = sympy.Poly([int(c) for c in coeffs], t, modulus=F.p)
    else:
        poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], t, domain=sympy.QQ)
    _, factors = poly.factor_list()
    if len(factors) < 2:
        return None
    f, mult = factors[0]
    g = f ** mult
    h = sympy.quo(poly, g)
    return _from_sympy(F, g), _from_sympy(F, h)


def _from_sympy(F, poly):
    coeffs = poly.all_coeffs()
    out = []
    for c in reversed(coeffs):
        c = sympy.Rational(c)
        out.append(F(Fraction(int(c.p), int(c.q))))
    return out


def _poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(F, a, b):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.reduce(out[i + j] + x * y)
    return _poly_trim(out)


def _poly_sub(F, a, b):
    n = max(len(a), len(b))
    a = list(a) + [F.zero] * (n - len(a))
    b = list(b) + [F.zero] * (n - len(b))
    return _poly_trim([F.reduce(x - y) for x, y in zip(a, b)])


def _poly_divmod(F, a, b):
    a = _poly_trim([F(x) for x in a])
    b = _poly_trim([F(x) for x in b])
    q = [F.zero] * max(len(a) - len(b) + 1, 1)
    inv = F.inv(b[-1])
    while len(a) >= len(b) and a:
        c = F.reduce(a[-1] * inv)
        k = len(a) - len(b)
        q[k] = c
        a = _poly_sub(F, a, [F.zero] * k + [F.reduce(c * y) for y in b])
    return _poly_trim(q), a


def _poly_bezout(F, g, h):
    """``(s, t)`` with ``s*g + t*h = 1`` for coprime ``g, h``."""
    r0, r1 = _poly_trim([F(x) for x in g]), _poly_trim([F(x) for x in h])
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = _poly_divmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(F, s0, _poly_mul(F, q, s1))
        t0, t1 = t1, _poly_sub(F, t0, _poly_mul(F, q, t1))
    if len(r0) != 1:
        raise ValueError("polynomials are not coprime")
    inv = F.inv(r0[0])
    return [F.reduce(inv * c) for c in s0], [F.reduce(inv * c) for c in t0]
