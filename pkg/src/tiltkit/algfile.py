"""The line-oriented ``.alg`` text format.

::

    field F 2                 # or: field Q
    vertices 4
    arrow alpha 1 2
    relation beta*alpha       # function-style: rightmost arrow first
    module M
    dim 1 1 0 0
    map alpha 1
    complex P
    row P2 P2 P4 P4           # degree -1 summands
    col P1 P3                 # degree 0 summands
    entry 1 1 alpha           # paths from col vertex to row vertex

Every ``relation`` line is a combination set to zero.  Missing ``map`` lines
mean zero maps and missing ``entry`` lines zero entries.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from .complexes import TwoTermComplex
from .linalg import GF, QQ, Field, Matrix
from .modules import (
    Representation,
    direct_sum,
    dualize,
    injective,
    projective,
    regular_module,
    simple,
    zero_module,
)
from .quiver import Algebra, Quiver, build_algebra, parse_linear_combination


class AlgParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass
class AlgFile:
    field: Field
    quiver: Quiver
    relations: list  # parsed [(coef, Path)]
    algebra: Algebra
    modules: dict = dc_field(default_factory=dict)
    complexes: dict = dc_field(default_factory=dict)

    def module(self, expr: str) -> Representation:
        return resolve_module(self, expr)

    def complex(self, name: str) -> TwoTermComplex:
        if name not in self.complexes:
            known = ", ".join(self.complexes) or "none"
            raise KeyError(f"no complex named {name!r} (known: {known})")
        return self.complexes[name]


_VERTEX = re.compile(r"^(?:P\(?(\d+)\)?|(\d+))$")


def _parse_field(args, line) -> Field:
    if args == ["Q"]:
        return QQ
    if len(args) == 2 and args[0] == "F" and args[1].isdigit():
        try:
            return GF(int(args[1]))
        except ValueError as exc:
            raise AlgParseError(str(exc), line) from exc
    raise AlgParseError("expected 'field Q' or 'field F <p>'", line)


def parse_field_tag(text: str) -> Field:
    """``Q``, ``F2``, ``F 2`` or ``GF(2)``."""
    m = re.fullmatch(r"\s*(?:F\s*|GF\()(\d+)\)?\s*", text)
    return _parse_field(["F", m.group(1)] if m else text.split(), None)


def _int(tok, line, what):
    try:
        return int(tok)
    except ValueError:
        raise AlgParseError(f"{what} must be an integer, got {tok!r}", line) from None


def _vertices(tokens, n, line):
    out = []
    for tok in tokens:
        m = _VERTEX.match(tok)
        if not m:
            raise AlgParseError(f"expected a projective like P3, got {tok!r}", line)
        v = int(m.group(1) or m.group(2))
        if not 1 <= v <= n:
            raise AlgParseError(f"vertex {v} outside 1..{n}", line)
        out.append(v)
    return out


def parse_alg(text: str, field_override: Field | None = None) -> AlgFile:
    """Parse ``.alg`` text; ``field_override`` replaces the declared field."""
    field = None
    n = None
    arrows, relation_lines = [], []
    blocks = []  # (kind, name, line, [(keyword, args, line)])
    seen_names = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        key, *args = body.split()
        if key == "field":
            if field is not None:
                raise AlgParseError("field declared twice", lineno)
            field = _parse_field(args, lineno)
        elif key == "vertices":
            if n is not None or len(args) != 1:
                raise AlgParseError("expected a single 'vertices <n>' line", lineno)
            n = _int(args[0], lineno, "vertex count")
            if n < 0:
                raise AlgParseError("vertex count must be nonnegative", lineno)
        elif key == "arrow":
            if blocks:
                raise AlgParseError("arrows must precede module and complex blocks", lineno)
            if len(args) != 3:
                raise AlgParseError("expected 'arrow <name> <source> <target>'", lineno)
            arrows.append((args[0], _int(args[1], lineno, "source"), _int(args[2], lineno, "target"), lineno))
        elif key == "relation":
            if blocks:
                raise AlgParseError("relations must precede module and complex blocks", lineno)
            if not args:
                raise AlgParseError("empty relation", lineno)
            relation_lines.append((" ".join(args), lineno))
        elif key in ("module", "complex"):
            if len(args) != 1:
                raise AlgParseError(f"expected '{key} <name>'", lineno)
            if args[0] in seen_names:
                raise AlgParseError(f"name {args[0]!r} used twice", lineno)
            seen_names.add(args[0])
            blocks.append((key, args[0], lineno, []))
        elif key in ("dim", "map", "row", "col", "entry"):
            owner = "module" if key in ("dim", "map") else "complex"
            if not blocks or blocks[-1][0] != owner:
                raise AlgParseError(f"'{key}' outside a {owner} block", lineno)
            blocks[-1][3].append((key, args, lineno))
        else:
            raise AlgParseError(f"unknown keyword {key!r}", lineno)

    if field is None:
        raise AlgParseError("missing 'field' line")
    if n is None:
        raise AlgParseError("missing 'vertices' line")
    if field_override is not None:
        field = field_override
    names = set()
    for name, s, t, lineno in arrows:
        if name in names:
            raise AlgParseError(f"arrow {name!r} declared twice", lineno)
        if not (1 <= s <= n and 1 <= t <= n):
            raise AlgParseError(f"arrow {name!r} has an endpoint outside 1..{n}", lineno)
        if re.fullmatch(r"e\d+|-?\d+(/\d+)?", name):
            raise AlgParseError(f"arrow name {name!r} is reserved", lineno)
        names.add(name)
    quiver = Quiver(n, tuple((name, s, t) for name, s, t, _ in arrows))
    relations = []
    for rel, lineno in relation_lines:
        try:
            terms = parse_linear_combination(quiver, field, rel)
        except (ValueError, KeyError) as exc:
            raise AlgParseError(f"bad relation {rel!r}: {exc}", lineno) from None
        ends = {(p.source, p.target) for _, p in terms}
        if len(ends) != 1:
            raise AlgParseError(f"relation {rel!r} mixes paths with different endpoints", lineno)
        relations.append(terms)
    try:
        algebra = build_algebra(quiver, relations, field)
    except ValueError as exc:
        raise AlgParseError(f"cannot build the algebra: {exc}") from None
    doc = AlgFile(field, quiver, relations, algebra)
    for kind, name, lineno, items in blocks:
        if kind == "module":
            doc.modules[name] = _build_module(algebra, name, lineno, items)
        else:
            doc.complexes[name] = _build_complex(algebra, name, lineno, items)
    return doc


def _build_module(A: Algebra, name, lineno, items) -> Representation:
    F = A.field
    dims = None
    given = {}
    for key, args, ln in items:
        if key == "dim":
            if dims is not None:
                raise AlgParseError("dim given twice", ln)
            if len(args) != A.n:
                raise AlgParseError(f"dim needs {A.n} entries", ln)
            dims = [_int(a, ln, "dimension") for a in args]
            if any(d < 0 for d in dims):
                raise AlgParseError("dimensions must be nonnegative", ln)
        else:
            if dims is None:
                raise AlgParseError("map before dim", ln)
            if not args:
                raise AlgParseError("map needs an arrow name", ln)
            try:
                k = A.quiver.arrow_index(args[0])
            except (KeyError, ValueError):
                raise AlgParseError(f"unknown arrow {args[0]!r}", ln) from None
            if k in given:
                raise AlgParseError(f"map {args[0]!r} given twice", ln)
            _, s, t = A.quiver.arrows[k]
            r, c = dims[t - 1], dims[s - 1]
            if len(args) - 1 != r * c:
                raise AlgParseError(f"map {args[0]} needs {r}x{c} = {r * c} entries, got {len(args) - 1}", ln)
            try:
                vals = [F.parse(x) for x in args[1:]]
            except (ValueError, ZeroDivisionError):
                raise AlgParseError(f"bad scalar in map {args[0]}", ln) from None
            given[k] = Matrix(F, r, c, [vals[i * c:(i + 1) * c] for i in range(r)])
    if dims is None:
        raise AlgParseError(f"module {name!r} has no dim line", lineno)
    maps = []
    for k, (_, s, t) in enumerate(A.quiver.arrows):
        maps.append(given.get(k, Matrix.zero(F, dims[t - 1], dims[s - 1])))
    try:
        return Representation(A, dims, maps, name=name)
    except ValueError as exc:
        raise AlgParseError(f"module {name!r}: {exc}", lineno) from None


def _build_complex(A: Algebra, name, lineno, items) -> TwoTermComplex:
    rows = cols = None
    entries = {}
    for key, args, ln in items:
        if key in ("row", "col"):
            if (rows if key == "row" else cols) is not None:
                raise AlgParseError(f"{key} given twice", ln)
            vs = _vertices(args, A.n, ln)
            if key == "row":
                rows = vs
            else:
                cols = vs
        else:
            if rows is None or cols is None:
                raise AlgParseError("entry before row and col", ln)
            if len(args) < 3:
                raise AlgParseError("expected 'entry <r> <c> <element>'", ln)
            r, c = _int(args[0], ln, "row index"), _int(args[1], ln, "column index")
            if not (1 <= r <= len(rows) and 1 <= c <= len(cols)):
                raise AlgParseError(f"entry ({r},{c}) outside the {len(rows)}x{len(cols)} matrix", ln)
            if (r, c) in entries:
                raise AlgParseError(f"entry ({r},{c}) given twice", ln)
            try:
                x = A.parse_element(" ".join(args[2:]))
            except (ValueError, KeyError) as exc:
                raise AlgParseError(f"bad element: {exc}", ln) from None
            if not A.in_corner(x, target=rows[r - 1], source=cols[c - 1]):
                raise AlgParseError(
                    f"entry ({r},{c}) must be a combination of paths {cols[c - 1]} -> {rows[r - 1]}", ln
                )
            entries[r - 1, c - 1] = x
    rows, cols = rows or [], cols or []
    z = A.zero()
    matrix = [[entries.get((r, c), z) for c in range(len(cols))] for r in range(len(rows))]
    return TwoTermComplex(A, rows, cols, matrix, name=name)


def read_alg(path, field_override: Field | None = None) -> AlgFile:
    with open(path, encoding="utf-8") as fh:
        return parse_alg(fh.read(), field_override)


# ---------------------------------------------------------------- emitting


def field_tag(F: Field) -> str:
    return f"F {F.p}" if F.is_finite else "Q"


def _format_relation(doc: AlgFile, rel) -> str:
    terms = []
    for c, p in rel:
        lab = p.label(doc.quiver)
        terms.append(lab if c == 1 else f"{doc.field.format(c)}*{lab}")
    return " + ".join(terms)


def emit_module(name: str, M: Representation) -> list[str]:
    F = M.field
    out = [f"module {name}", "dim " + " ".join(map(str, M.dims))]
    for k, m in enumerate(M.maps):
        if m.nrows and m.ncols and not m.is_zero():
            out.append(f"map {M.algebra.quiver.name(k)} " + " ".join(F.format(x) for x in m.flat()))
    return out


def emit_complex(name: str, P: TwoTermComplex) -> list[str]:
    A = P.algebra
    out = [f"complex {name}"]
    out.append(("row " + " ".join(f"P{v}" for v in P.rows)).rstrip())
    out.append(("col " + " ".join(f"P{v}" for v in P.cols)).rstrip())
    for r, row in enumerate(P.matrix):
        for c, x in enumerate(row):
            if any(x):
                out.append(f"entry {r + 1} {c + 1} {A.format_element(x)}")
    return out


def emit_alg(doc: AlgFile) -> str:
    lines = [f"field {field_tag(doc.field)}", f"vertices {doc.quiver.n}"]
    for name, s, t in doc.quiver.arrows:
        lines.append(f"arrow {name} {s} {t}")
    for rel in doc.relations:
        lines.append("relation " + _format_relation(doc, rel))
    for name, M in doc.modules.items():
        lines.append("")
        lines.extend(emit_module(name, M))
    for name, P in doc.complexes.items():
        lines.append("")
        lines.extend(emit_complex(name, P))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- module expressions


_BUILTIN = re.compile(r"^([PIS])\(?(\d+)\)?$")


def resolve_module(doc: AlgFile, expr: str) -> Representation:
    """``P2``, ``I1``, ``S3``, ``A``, ``DA``, ``0`` or a file module, joined with ``+``."""
    A = doc.algebra
    parts = []
    for tok in expr.replace(" ", "").split("+"):
        if not tok:
            raise KeyError(f"empty summand in {expr!r}")
        if tok in doc.modules:
            parts.append(doc.modules[tok])
            continue
        m = _BUILTIN.match(tok)
        if m:
            v = int(m.group(2))
            if not 1 <= v <= A.n:
                raise KeyError(f"vertex {v} outside 1..{A.n} in {tok!r}")
            parts.append({"P": projective, "I": injective, "S": simple}[m.group(1)](A, v))
        elif tok == "A":
            parts.append(regular_module(A))
        elif tok == "DA":
            parts.append(dualize(regular_module(A.opposite())))
        elif tok == "0":
            parts.append(zero_module(A))
        else:
            raise KeyError(f"unknown module {tok!r}")
    M = parts[0] if len(parts) == 1 else direct_sum(parts)
    if not M.name:
        M.name = expr.replace(" ", "")
    return M


def fixture_path(name: str) -> str:
    """Path of a bundled ``.alg`` fixture such as ``ex310.alg``."""
    from importlib.resources import files

    return str(files("tiltkit") / "fixtures" / name)


def load_fixture(name: str, field_override: Field | None = None) -> AlgFile:
    return read_alg(fixture_path(name), field_override)
