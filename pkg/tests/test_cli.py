import os
import shutil
import subprocess

import pytest

from tiltkit.algfile import fixture_path, read_alg
from tiltkit.cli import run

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def fx(name):
    return fixture_path(name)


def machine(text):
    head = text.split("\n\n", 1)[0]
    return dict(line.split(": ", 1) for line in head.splitlines())


def golden(name):
    with open(os.path.join(GOLDEN, name), encoding="utf-8") as fh:
        return fh.read()


@pytest.mark.parametrize(
    "argv, code",
    [
        (["check", fx("a2.alg"), "--complex", "TILT"], 0),
        (["check", fx("free.alg"), "--complex", "P"], 0),
        (["check", fx("a2.alg"), "--complex", "CONE"], 1),
        (["check", fx("a2.alg"), "--complex", "MISSING"], 3),
        (["check", "/nonexistent.alg", "--complex", "P"], 3),
        (["endo", fx("ex310.alg"), "--complex", "P"], 0),
        (["construct", fx("a2.alg"), "--x-gen", "S1", "--y-cogen", "S2"], 3),
        (["enumerate", fx("a2.alg"), "--field-override", "F2", "--bound", "1,1"], 0),
        (["enumerate", fx("a2.alg"), "--bound", "1,1"], 3),
    ],
)
def test_exit_codes(argv, code):
    text, got = run(argv)
    assert got == code, text
    assert machine(text)["status"] in ("verified", "refuted", "inconclusive", "error")


def test_output_is_deterministic():
    argv = ["check", fx("ex310.alg"), "--complex", "P", "--bound", "1,1,1,1"]
    assert run(argv)[0] == run(argv)[0]


def test_golden_check():
    text, code = run(["check", fx("ex310.alg"), "--complex", "P", "--bound", "1,1,1,1"])
    assert code == 1
    assert text == golden("ex310_check_P.txt")


def test_golden_endo():
    text, _ = run(["endo", fx("ex310.alg"), "--complex", "P"])
    assert text == golden("ex310_endo_P.txt")


def test_machine_lines_sorted():
    text, _ = run(["check", fx("a2.alg"), "--complex", "TILT"])
    keys = list(machine(text))
    assert keys == sorted(keys)


def test_construct_compare():
    text, code = run(["construct", fx("a2.alg"), "--x-gen", "S1+P1", "--y-cogen", "S2", "--compare", "TILT"])
    assert code == 0
    m = machine(text)
    assert m["construct.add_equal"] == "true"
    assert "complex T" in text


def test_construct_output_parses(tmp_path):
    text, _ = run(["construct", fx("a2.alg"), "--x-gen", "S1+P1", "--y-cogen", "S2", "--name", "NEW"])
    block = text[text.index("complex NEW"):]
    with open(fx("a2.alg"), encoding="utf-8") as fh:
        src = fh.read()
    path = tmp_path / "out.alg"
    path.write_text(src + "\n" + block)
    doc = read_alg(str(path))
    assert "NEW" in doc.complexes
    text, code = run(["check", str(path), "--complex", "NEW"])
    assert code == 0


def test_construct_error_names_violation():
    text, code = run(["construct", fx("a2.alg"), "--x-gen", "S1", "--y-cogen", "S2"])
    assert code == 3 and "error:" in text and "dimvec(1,1)" in text


def test_torsion_command():
    text, code = run(["torsion", fx("a2.alg"), "--complex", "TILT"])
    assert code == 0
    assert machine(text)["torsion.verdict"] == "verified"


def test_bb_verify_small():
    text, code = run(["bb-verify", fx("a2.alg"), "--complex", "TILT", "--field-override", "F2", "--bound", "2,2"])
    assert code == 0, text


def test_bb_verify_needs_torsion_pair():
    _, code = run(["bb-verify", fx("a2.alg"), "--complex", "CONE"])
    assert code == 2


def test_enumerate_dump(tmp_path):
    out = tmp_path / "dump.alg"
    text, code = run(["enumerate", fx("a2.alg"), "--field-override", "F2", "--bound", "1,1", "--dump", str(out)])
    assert code == 0
    doc = read_alg(str(out))
    assert len(doc.modules) == 5


@pytest.mark.skipif(shutil.which("tilt") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["tilt", "endo", fx("k.alg"), "--complex", "P"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "endo.dim: 1" in res.stdout


def test_bare_fixture_name(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    text, code = run(["endo", "ex310.alg", "--complex", "P"])
    assert code == 0 and "endo.dim: 6" in text
