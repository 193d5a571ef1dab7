"""``tilt``: command-line front end.

Every report starts with sorted ``key: value`` lines followed by a blank line
and free text.  The exit code is read off the ``status`` key alone:
0 verified, 1 refuted, 2 inconclusive, 3 error.
"""
from __future__ import annotations

import argparse
import os
import sys

from .algfile import AlgParseError, emit_alg, emit_complex, field_tag, fixture_path, parse_field_tag, read_alg
from .complexes import add_equal, cached_cohomology, is_contractible
from .oracle import OracleError, enumerate_modules, regular_bound
from .presentation import PresentationError, present_endomorphism_algebra
from .structalg import LocalRingError
from .tilting import (
    INCONCLUSIVE,
    REFUTED,
    VERIFIED,
    BBFunctors,
    InconsistencyError,
    MembershipError,
    PreconditionError,
    TorsionInput,
    construct_from_torsion,
    is_tilting,
    regular_identities,
    round_trips,
    standard_sample,
    verify_B_side,
)
from .torsion import ext_injective_check, ext_projective_check, is_splitting, verify_torsion_pair

EXIT = {VERIFIED: 0, REFUTED: 1, INCONCLUSIVE: 2, "error": 3}


class Report:
    def __init__(self, command: str):
        self.command = command
        self.machine = {"command": command}
        self.human = []

    def set(self, **kv):
        for k, v in kv.items():
            self.machine[k.replace("__", ".")] = v

    def update(self, d: dict):
        self.machine.update(d)

    def say(self, line: str = ""):
        self.human.append(line)

    @property
    def status(self) -> str:
        return self.machine.get("status", "error")

    @property
    def exit_code(self) -> int:
        return EXIT.get(self.status, 3)

    def render(self) -> str:
        lines = [f"{k}: {self.machine[k]}" for k in sorted(self.machine)]
        out = "\n".join(lines) + "\n"
        if self.human:
            out += "\n" + "\n".join(self.human) + "\n"
        return out


def _dims(M) -> str:
    return "(" + ",".join(map(str, M.dims)) + ")"


def _bool(x) -> str:
    return "true" if x else "false"


def _bound(text, A):
    if text is None:
        return regular_bound(A)
    try:
        b = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"bound must look like 2,2,2,2, got {text!r}") from None
    if len(b) != A.n:
        raise ValueError(f"bound has {len(b)} entries, the algebra has {A.n} vertices")
    return b


def _load(args):
    override = parse_field_tag(args.field_override) if getattr(args, "field_override", None) else None
    path = args.file
    if not os.path.exists(path) and os.sep not in path and os.path.exists(fixture_path(path)):
        # bare name of a bundled fixture
        path = fixture_path(path)
    return read_alg(path, override)


def _inventory(A, bound):
    return enumerate_modules(A, bound) if A.field.is_finite else None


def _header(rep: Report, doc, P=None):
    rep.set(algebra__field=field_tag(doc.field).replace(" ", ""), algebra__dim=str(doc.algebra.dim),
            algebra__vertices=str(doc.algebra.n))
    if P is not None:
        b = cached_cohomology(P)
        rep.set(complex__name=P.name, complex__degree_minus1=" ".join(f"P{v}" for v in P.rows) or "0",
                complex__degree_0=" ".join(f"P{v}" for v in P.cols) or "0",
                cohomology__H0=_dims(b.H0), cohomology__Hminus1=_dims(b.Hminus1),
                cohomology__H1dual=_dims(b.H1dual), cohomology__Hminus1_nu=_dims(b.Hminus1_nu))


# ---------------------------------------------------------------- commands


def cmd_check(args) -> Report:
    rep = Report("check")
    doc = _load(args)
    P = doc.complex(args.complex)
    _header(rep, doc, P)
    A = doc.algebra
    inv = _inventory(A, _bound(args.bound, A))
    tors = verify_torsion_pair(P, inventory=inv, seed=args.seed, use_oracle=inv is not None)
    verdict = is_tilting(P, inventory=inv, seed=args.seed, use_oracle=False)
    rep.update(tors.machine_lines("torsion"))
    rep.update(verdict.machine_lines("tilting"))
    rep.set(status=verdict.overall)
    rep.say(f"complex {P.name}: tilting {verdict.overall}, torsion pair {tors.verdict}")
    if not verdict.presilting_down:
        rep.say("Hom_K(P, P[-1]) is nonzero, so H^-1(P) is not in Y")
    if not verdict.presilting_up:
        rep.say("Hom_K(P, P[1]) is nonzero, so H^0(P) is not in X")
    if tors.witness is not None:
        rep.say(f"witness ({tors.witness_kind}): dimension vector {_dims(tors.witness)}")
    if inv is None:
        rep.say("no enumeration over Q; certificates are exact or heuristic only")
    return rep


def cmd_torsion(args) -> Report:
    rep = Report("torsion")
    doc = _load(args)
    P = doc.complex(args.complex)
    _header(rep, doc, P)
    A = doc.algebra
    inv = _inventory(A, _bound(args.bound, A))
    tors = verify_torsion_pair(P, inventory=inv, seed=args.seed, use_oracle=inv is not None)
    sample = inv.nonzero() if inv is not None else standard_sample(A)
    proj = ext_projective_check(P, sample)
    inj = ext_injective_check(P, sample)
    rep.set(torsion__ext_projective=_bool(proj), torsion__ext_injective=_bool(inj),
            torsion__sample_size=str(len(sample)))
    verdict = is_tilting(P, inventory=inv, seed=args.seed, use_oracle=False)
    if verdict.overall == VERIFIED:
        split = is_splitting(P, sample, verdict)
        tors.splitting = split.ok
    rep.update(tors.machine_lines("torsion"))
    rep.set(status=tors.verdict)
    rep.say(f"(X, Y) for {P.name}: {tors.verdict} ({tors.intersection_zero})")
    if tors.witness is not None:
        rep.say(f"witness ({tors.witness_kind}): dimension vector {_dims(tors.witness)}")
    for name, res in (("Ext-projectivity of H^0", proj), ("Ext-injectivity of H^-1(nu P)", inj)):
        if not res:
            rep.say(f"{name} fails against {_dims(res.violation)}")
    return rep


def cmd_endo(args) -> Report:
    rep = Report("endo")
    doc = _load(args)
    P = doc.complex(args.complex)
    _header(rep, doc, P)
    E = BBFunctors(P).endo
    pres = present_endomorphism_algebra(P, args.seed)
    arrows = ",".join(f"{s}->{t}" for s, t in pres.arrow_list) or "none"
    rep.set(endo__dim=str(E.dim), endo__vertices=str(pres.quiver.n), endo__arrows=arrows,
            endo__relations=str(len(pres.relations)), endo__relation_degree=str(pres.relation_degree),
            endo__contractible=_bool(is_contractible(P)), status=VERIFIED)
    rep.say(f"B = End_K({P.name})^op has dimension {E.dim}")
    q = pres.quiver
    for name, s, t in q.arrows:
        rep.say(f"arrow {name} {s} {t}")
    for rel in pres.relations:
        rep.say("relation " + " + ".join(
            (p.label(q) if c == 1 else f"{doc.field.format(c)}*{p.label(q)}") for c, p in rel))
    return rep


def cmd_construct(args) -> Report:
    rep = Report("construct")
    doc = _load(args)
    A = doc.algebra
    _header(rep, doc)
    X, Y = doc.module(args.x_gen), doc.module(args.y_cogen)
    inv = _inventory(A, _bound(args.bound, A))
    res = construct_from_torsion(TorsionInput(X, Y), inventory=inv, seed=args.seed)
    P = res.complex
    P.name = args.name
    rep.update(res.verdict.machine_lines("tilting"))
    rep.set(construct__x_gen=args.x_gen, construct__y_cogen=args.y_cogen,
            construct__classes_agree=_bool(res.classes_agree), construct__universe=res.universe,
            construct__universe_size=str(res.universe_size))
    ok = res.verdict.overall
    if args.compare:
        same = add_equal(P, doc.complex(args.compare))
        rep.set(construct__add_equal=_bool(same), construct__compare=args.compare)
        if not same:
            ok = REFUTED
    if not res.classes_agree:
        ok = REFUTED
    rep.set(status=ok)
    for w in res.warnings:
        rep.say(f"warning: {w}")
    rep.say("")
    rep.human.extend(emit_complex(args.name, P))
    return rep


def cmd_bb_verify(args) -> Report:
    rep = Report("bb-verify")
    doc = _load(args)
    P = doc.complex(args.complex)
    _header(rep, doc, P)
    A = doc.algebra
    bound = _bound(args.bound, A)
    inv = _inventory(A, bound)
    tors = verify_torsion_pair(P, inventory=inv, seed=args.seed, use_oracle=inv is not None)
    rep.update(tors.machine_lines("torsion"))
    if tors.verdict != VERIFIED:
        rep.set(status=INCONCLUSIVE)
        rep.say(f"torsion pair is {tors.verdict}; the equivalences are not checked")
        return rep
    mods = inv.nonzero() if inv is not None else _q_sample(P)
    rt = round_trips(P, mods, args.seed)
    rep.set(bb__universe="inventory" if inv is not None else "sample", bb__modules=str(len(mods)),
            bb__x_members=str(rt.x_members), bb__y_members=str(rt.y_members),
            bb__x_failures=str(len(rt.x_failures)), bb__y_failures=str(len(rt.y_failures)),
            bb__landing_failures=str(len(rt.landing_failures)))
    ok = rt.ok
    if A.field.is_finite and not args.skip_b_side:
        bs = verify_B_side(P, bound=args.b_bound and tuple(int(x) for x in args.b_bound.split(",")), seed=args.seed)
        rep.set(bb__b_side=("pass" if bs.ok else "fail") if bs.checked else "skipped",
                bb__b_side_modules=str(bs.modules))
        ok = ok and bs.ok
        if bs.note:
            rep.say(f"B side: {bs.note}")
    verdict = is_tilting(P, inventory=inv, seed=args.seed, use_oracle=False)
    rep.set(bb__tilting=verdict.overall)
    if verdict.overall == VERIFIED:
        ids = regular_identities(P, args.seed)
        rep.set(bb__regular_h0=_bool(ids["h0"]), bb__regular_hminus1=_bool(ids["hminus1"]))
        ok = ok and all(ids.values())
    rep.set(status=VERIFIED if ok else REFUTED)
    rep.say(f"round trips: {rt.x_members} members of X, {rt.y_members} of Y, "
            f"{len(rt.x_failures) + len(rt.y_failures)} failures")
    for M in rt.x_failures + rt.y_failures:
        rep.say(f"failure at {M.name or ''} {_dims(M)}")
    return rep


def _q_sample(P):
    b = cached_cohomology(P)
    extra = [M for M in (b.H0, b.Hminus1, b.Hminus1_nu) if not M.is_zero()]
    seen, out = [], []
    for M in standard_sample(P.algebra, extra):
        key = (M.dims, tuple(m.flat() for m in M.maps))
        if key not in seen:
            seen.append(key)
            out.append(M)
    return out


def cmd_enumerate(args) -> Report:
    rep = Report("enumerate")
    doc = _load(args)
    A = doc.algebra
    _header(rep, doc)
    inv = enumerate_modules(A, _bound(args.bound, A))
    indec = inv.indecomposables(args.seed)
    rep.set(inventory__bound=",".join(map(str, inv.bound)), inventory__size=str(len(inv)),
            inventory__candidates=str(inv.candidates), inventory__indecomposables=str(len(indec)), status=VERIFIED)
    flags = inv.classify(doc.complex(args.complex)) if args.complex else None
    for i, M in enumerate(inv.representatives):
        tags = []
        if inv.flags[i].get("indecomposable"):
            tags.append("indecomposable")
        if flags is not None:
            tags += [c for c in ("in_X", "in_Y") if flags[i][c]]
        rep.say(f"{M.name} {_dims(M)} {' '.join(tags)}".rstrip())
    if args.dump:
        dump = doc.__class__(doc.field, doc.quiver, doc.relations, A,
                             {M.name: M for M in inv.representatives}, {})
        with open(args.dump, "w", encoding="utf-8") as fh:
            fh.write(emit_alg(dump))
        rep.set(inventory__dump=args.dump)
    return rep


COMMANDS = {
    "check": cmd_check,
    "torsion": cmd_torsion,
    "endo": cmd_endo,
    "construct": cmd_construct,
    "bb-verify": cmd_bb_verify,
    "enumerate": cmd_enumerate,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tilt", description="Two-term tilting complexes over quiver algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, complex_required=True):
        p.add_argument("file", help=".alg input file")
        p.add_argument("--field-override", help="replace the file's field, e.g. Q or F3")
        p.add_argument("--seed", type=int, default=0)
        if complex_required is not None:
            p.add_argument("--complex", required=complex_required, help="name of a complex block")

    for name in ("check", "torsion", "bb-verify"):
        p = sub.add_parser(name)
        common(p)
        p.add_argument("--bound", help="dimension-vector cap, e.g. 2,2,2,2 (default: that of A)")
        if name == "bb-verify":
            p.add_argument("--b-bound", help="cap for the B-module enumeration (default: that of B)")
            p.add_argument("--skip-b-side", action="store_true")
    p = sub.add_parser("endo")
    common(p)
    p = sub.add_parser("construct")
    common(p, complex_required=None)
    p.add_argument("--x-gen", required=True, help="module expression such as S1+P1")
    p.add_argument("--y-cogen", required=True, help="module expression such as S2, or 0")
    p.add_argument("--bound")
    p.add_argument("--name", default="T", help="name of the emitted complex")
    p.add_argument("--compare", help="complex in the file to test add-equality against")
    p = sub.add_parser("enumerate")
    common(p, complex_required=False)
    p.add_argument("--bound")
    p.add_argument("--dump", help="write every representative to this .alg file")
    return ap


ERRORS = (
    AlgParseError,
    KeyError,
    ValueError,
    OSError,
    OracleError,
    PreconditionError,
    MembershipError,
    PresentationError,
    LocalRingError,
    InconsistencyError,
)


def run(argv=None) -> tuple[str, int]:
    args = build_parser().parse_args(argv)
    try:
        rep = COMMANDS[args.command](args)
    except ERRORS as exc:
        rep = Report(args.command)
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        rep.set(status="error", error=str(msg))
    return rep.render(), rep.exit_code


def main(argv=None) -> int:
    out, code = run(argv)
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
