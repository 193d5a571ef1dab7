import pytest

from tiltkit.algfile import (
    AlgParseError,
    emit_alg,
    fixture_path,
    load_fixture,
    parse_alg,
    parse_field_tag,
    resolve_module,
)
from tiltkit.linalg import GF, QQ
from tiltkit.modules import is_isomorphic, projective, simple

FIXTURES = ["ex310.alg", "free.alg", "a2.alg", "k.alg", "a3.alg", "kronecker.alg"]

HEADER = "field F 3\nvertices 2\narrow a 1 2\n"


@pytest.mark.parametrize("name", FIXTURES)
def test_round_trip_is_byte_stable(name):
    doc = load_fixture(name)
    text = emit_alg(doc)
    again = parse_alg(text)
    assert emit_alg(again) == text
    assert again.algebra.dim == doc.algebra.dim
    for k, P in doc.complexes.items():
        assert again.complex(k).rows == P.rows and again.complex(k).matrix == P.matrix


def test_field_tags():
    assert parse_field_tag("Q") is QQ
    for tag in ("F2", "F 2", "GF(2)"):
        assert parse_field_tag(tag) == GF(2)
    with pytest.raises(ValueError):
        parse_field_tag("F4")


def test_field_override():
    doc = load_fixture("ex310.alg", QQ)
    assert doc.field is QQ and doc.algebra.dim == 8


def test_module_block():
    doc = parse_alg(HEADER + "module M\ndim 1 1\nmap a 2\n")
    M = doc.module("M")
    assert M.dims == (1, 1)
    assert is_isomorphic(M, projective(doc.algebra, 1))


def test_resolve_expressions():
    doc = load_fixture("a2.alg")
    A = doc.algebra
    assert resolve_module(doc, "S1+P1").dims == (2, 1)
    assert is_isomorphic(resolve_module(doc, "S2"), simple(A, 2))
    assert resolve_module(doc, "0").is_zero()
    assert resolve_module(doc, "DA").dims == (2, 1)
    with pytest.raises(KeyError):
        resolve_module(doc, "S7")
    with pytest.raises(KeyError):
        resolve_module(doc, "Q1")


def test_unknown_complex():
    with pytest.raises(KeyError):
        load_fixture("a2.alg").complex("NOPE")


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        (HEADER + "bogus 1\n", 4, "unknown keyword"),
        (HEADER + "arrow a 1 2\n", 4, "declared twice"),
        (HEADER + "arrow b 1 3\n", 4, "outside"),
        ("field F 3\nvertices 2\narrow e1 1 2\n", 3, "reserved"),
        (HEADER + "module M\ndim 1 1\nmap a 1 2\n", 6, "entries"),
        (HEADER + "complex C\nrow P1\ncol P2\nentry 1 1 a\n", 7, "paths"),
        (HEADER + "complex C\nrow P1\ncol P2\nentry 2 1 0\n", 7, "outside"),
        (HEADER + "complex C\nrow P3\n", 5, "vertex"),
        (HEADER + "entry 1 1 a\n", 4, "outside a complex"),
        (HEADER + "module M\ndim 1 1\nmodule M\ndim 1 1\n", 6, "used twice"),
        (HEADER + "field Q\n", 4, "twice"),
        (HEADER + "module M\nmap a 1\n", 5, "before dim"),
    ],
)
def test_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(AlgParseError) as exc:
        parse_alg(text)
    assert exc.value.line == line
    assert fragment in str(exc.value)
    assert str(exc.value).startswith(f"line {line}:")


def test_missing_header_lines():
    with pytest.raises(AlgParseError, match="field"):
        parse_alg("vertices 1\n")
    with pytest.raises(AlgParseError, match="vertices"):
        parse_alg("field Q\n")


def test_relation_violation_reported():
    text = "field Q\nvertices 3\narrow a 1 2\narrow b 2 3\nrelation b*a\nmodule M\ndim 1 1 1\nmap a 1\nmap b 1\n"
    with pytest.raises(AlgParseError, match="does not hold"):
        parse_alg(text)


def test_infinite_algebra_rejected():
    with pytest.raises(AlgParseError, match="infinite"):
        parse_alg("field Q\nvertices 1\narrow x 1 1\n")


def test_fixture_path_exists():
    with open(fixture_path("ex310.alg"), encoding="utf-8") as fh:
        assert "relation" in fh.read()
