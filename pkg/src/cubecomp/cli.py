"""Command line front end.

Subcommands: classgroup, compose, verify, dual, examples.  Every run prints
a report (human text by default, a JSON document with --json) carrying the
verdict, the reasons for any failure, the computed artifacts, and the wall
time.  Exit codes: 0 for verified or composed, 1 when a verification comes
back false, 2 for malformed input, 3 for a domain the exact routines do not
cover.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import resources

from .altforms import verify_quaternary_composition, verify_senary_identity
from .bqf import BQF, compose_dirichlet, enumerate_class_group, reduce
from .cubes import (
    Cube,
    assoc_forms,
    cube_class_compose,
    cube_disc,
    dual_cubes_solve,
    lemmermeyer_identity,
    verify_cube_composition,
)
from .exact import InputError, UnsupportedDomainError
from .symspaces import (
    BinaryCubic,
    PairBQF,
    cubic_class_compose,
    cubic_disc,
    cubic_q,
    pair_disc,
    verify_cubic_composition,
    verify_pair_composition,
)
from .wire import (
    Envelope,
    _emit_int,
    encode_envelope,
    parse_envelope,
)

FIXTURES = (
    "cube_disc_m47.json",
    "cubic_disc_8.json",
    "pair_disc_m31.json",
    "quat_disc_m47.json",
)

_LAW_FOR_SPACE = {"cube": "cube", "cubic": "cubic", "pair": "pair", "quat": "quat"}


class Report:
    """What a subcommand computed, ready for either output mode."""

    def __init__(self, command: str):
        self.command = command
        self.verdict: bool | None = None
        self.reasons: list[str] = []
        self.artifacts: list = []
        self.lines: list[str] = []
        self.elapsed: float = 0.0

    def exit_code(self) -> int:
        return 1 if self.verdict is False else 0

    def to_json(self) -> dict:
        if self.verdict is None:
            verdict = None
        else:
            verdict = "verified" if self.verdict else "failed"
        return {
            "command": self.command,
            "verdict": verdict,
            "reasons": list(self.reasons),
            "artifacts": list(self.artifacts),
            "elapsed_seconds": f"{self.elapsed:.6f}",
        }

    def print_human(self, out) -> None:
        for line in self.lines:
            print(line, file=out)
        if self.verdict is not None:
            print(
                f"{self.command}: {'verified' if self.verdict else 'FAILED'}",
                file=out,
            )
        for r in self.reasons:
            print(f"  - {r}", file=out)
        print(f"elapsed: {self.elapsed:.3f}s", file=out)


def _read_envelope(path: str) -> Envelope:
    if path == "-":
        return parse_envelope(sys.stdin.read())
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_envelope(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _only(env: Envelope, kind_type, what: str, count: int):
    picked = [o for o in env.objects if isinstance(o, kind_type)]
    if len(picked) != count or len(env.objects) != count:
        raise InputError(f"expected exactly {count} {what}")
    return picked


def _split(env: Envelope, spec):
    """Partition env.objects by type per spec [(type, count, what), ...],
    preserving file order inside each group and rejecting leftovers."""
    groups = []
    used = 0
    for kind_type, count, what in spec:
        picked = [o for o in env.objects if isinstance(o, kind_type)]
        if len(picked) != count:
            raise InputError(f"expected {count} {what}, got {len(picked)}")
        groups.append(picked)
        used += count
    if len(env.objects) != used:
        raise InputError("envelope carries objects of an unexpected kind")
    return groups


def _check_disc(env: Envelope, discs) -> None:
    for d in discs:
        if d != env.discriminant:
            raise InputError(
                f"envelope says discriminant {env.discriminant}, "
                f"objects have {d}"
            )


def _form_str(Q: BQF) -> str:
    return f"[{Q.a}, {Q.b}, {Q.c}]"


# -- subcommand bodies -----------------------------------------------------


def cmd_classgroup(args) -> Report:
    rep = Report("classgroup")
    table = enumerate_class_group(args.discriminant)
    D = table.D
    reps = table.representatives
    posdef = [Q for Q in reps if D < 0 and Q.a > 0]
    if D < 0:
        rep.lines.append(
            f"discriminant {D}: {len(reps)} narrow classes, "
            f"{len(posdef)} positive definite"
        )
    else:
        rep.lines.append(f"discriminant {D}: {len(reps)} narrow classes")
    for i, Q in enumerate(reps):
        tag = "  positive definite" if D < 0 and Q.a > 0 else ""
        rep.lines.append(f"  [{i}] {_form_str(Q)}{tag}")
    rep.lines.append(f"identity: index {table.identity_index()}")
    rep.artifacts.append(
        {
            "class_count": _emit_int(len(reps)),
            "posdef_count": _emit_int(len(posdef)) if D < 0 else None,
            "identity_index": _emit_int(table.identity_index()),
            "representatives": encode_envelope("bqf", D, reps),
            "table": [[_emit_int(v) for v in row] for row in table.table],
        }
    )
    return rep


def cmd_compose(args) -> Report:
    rep = Report("compose")
    env = _read_envelope(args.infile)
    if env.space == "bqf":
        forms = [o for o in env.objects if isinstance(o, BQF)]
        if len(forms) < 2 or len(forms) != len(env.objects):
            raise InputError("composition needs at least two forms")
        _check_disc(env, (Q.disc() for Q in forms))
        acc = forms[0]
        for Q in forms[1:]:
            acc = compose_dirichlet(acc, Q)
        acc = reduce(acc).canonical
        rep.lines.append(f"composed class: {_form_str(acc)}")
        rep.artifacts.append(
            encode_envelope("bqf", env.discriminant, [acc], ["product"])
        )
    elif env.space == "cube":
        A, B = _only(env, Cube, "cubes", 2)
        _check_disc(env, (cube_disc(A), cube_disc(B)))
        C = cube_class_compose(A, B)
        rep.lines.append(f"composed class representative: {list(C.coeffs)}")
        rep.lines.append(
            "  Q1: " + _form_str(assoc_forms(C)[0])
        )
        rep.artifacts.append(
            encode_envelope("cube", env.discriminant, [C], ["product"])
        )
    elif env.space == "cubic":
        f, g = _only(env, BinaryCubic, "cubics", 2)
        _check_disc(env, (cubic_disc(f), cubic_disc(g)))
        comp = cubic_class_compose(f, g)
        ideal = comp.ideal.hnf_basis()
        qprod = compose_dirichlet(cubic_q(f), cubic_q(g))
        rep.lines.append(
            "composed class certificate (ideal basis and generator product):"
        )
        for name, el in (
            ("basis[0]", ideal.basis[0]),
            ("basis[1]", ideal.basis[1]),
            ("delta", comp.delta),
        ):
            rep.lines.append(f"  {name}: ({el.p} + {el.q} t) / {el.d}")
        rep.lines.append(f"  form product class: {_form_str(qprod)}")
        rep.artifacts.append(
            {
                "ideal_basis": [
                    {
                        "p": _emit_int(el.p),
                        "q": _emit_int(el.q),
                        "d": _emit_int(el.d),
                    }
                    for el in ideal.basis
                ],
                "delta": {
                    "p": _emit_int(comp.delta.p),
                    "q": _emit_int(comp.delta.q),
                    "d": _emit_int(comp.delta.d),
                },
                "form_product": encode_envelope(
                    "bqf", env.discriminant, [qprod]
                ),
            }
        )
    else:
        raise InputError(
            f"composition is not implemented in the {env.space!r} space; "
            "compose in the cube space instead"
        )
    return rep


def _verify_envelope(law: str, env: Envelope):
    """Run one composition-law verification; (verdict, reasons, artifacts)."""
    if law == "gauss":
        (A,) = _only(env, Cube, "cube", 1)
        _check_disc(env, (cube_disc(A),))
        forms, data, ok = lemmermeyer_identity(A)
        reasons = [] if ok else ["the bilinear composition identity fails"]
        artifacts = [
            encode_envelope(
                "bqf",
                env.discriminant,
                list(forms),
                ["factor1", "factor2", "product"],
            )
        ]
        return ok, reasons, artifacts
    if law == "cube":
        cubes = _only(env, Cube, "cubes", 6)
        _check_disc(env, (cube_disc(cubes[0]),))
        res = verify_cube_composition(*cubes)
        return res.ok, list(res.reasons), []
    if law == "cubic":
        (fgh, (R,)) = _split(
            env, ((BinaryCubic, 3, "cubics"), (Cube, 1, "witness cube"))
        )
        _check_disc(env, (cubic_disc(fgh[0]),))
        ok = verify_cubic_composition(fgh[0], fgh[1], fgh[2], R)
        reasons = [] if ok else ["the cubic composition identity does not hold"]
        return ok, reasons, []
    if law == "pair":
        (FGH, RS) = _split(
            env, ((PairBQF, 3, "form pairs"), (Cube, 2, "witness cubes"))
        )
        _check_disc(env, (pair_disc(FGH[0]),))
        ok = verify_pair_composition(FGH[0], FGH[1], FGH[2], RS[0], RS[1])
        reasons = [] if ok else ["the pair composition identity does not hold"]
        return ok, reasons, []
    if law == "quat":
        cubes = _only(env, Cube, "cubes", 6)
        _check_disc(env, (cube_disc(cubes[0]),))
        ok = verify_quaternary_composition(*cubes)
        reasons = (
            []
            if ok
            else ["the quaternary pair composition identity does not hold"]
        )
        return ok, reasons, []
    raise InputError(f"unknown law {law!r}")


def cmd_verify(args) -> Report:
    rep = Report(f"verify {args.law}")
    if args.law == "senary":
        if args.discriminant is None:
            raise InputError("the senary law takes --discriminant")
        ok = verify_senary_identity(args.discriminant)
        rep.verdict = ok
        if not ok:
            rep.reasons.append("the senary identity pairing does not hold")
        return rep
    if args.infile is None:
        raise InputError("this law takes --in with an envelope file")
    env = _read_envelope(args.infile)
    ok, reasons, artifacts = _verify_envelope(args.law, env)
    rep.verdict = bool(ok)
    rep.reasons = reasons
    rep.artifacts = artifacts
    return rep


def cmd_dual(args) -> Report:
    rep = Report("dual")
    env = _read_envelope(args.infile)
    A, B, C = _only(env, Cube, "cubes", 3)
    _check_disc(env, (cube_disc(A), cube_disc(B), cube_disc(C)))
    witness = dual_cubes_solve(A, B, C)
    res = verify_cube_composition(A, B, C, *witness.cubes())
    rep.verdict = res.ok
    rep.reasons = list(res.reasons)
    for name, X in zip("RST", witness.cubes()):
        rep.lines.append(f"witness {name}: {list(X.coeffs)}")
    rep.artifacts.append(
        encode_envelope(
            "cube", env.discriminant, list(witness.cubes()), ["R", "S", "T"]
        )
    )
    return rep


def _fixture_text(name: str) -> str:
    return (
        resources.files("cubecomp").joinpath("fixtures").joinpath(name)
        .read_text(encoding="utf-8")
    )


def cmd_examples(args) -> Report:
    rep = Report("examples")
    passed = 0
    for name in FIXTURES:
        env = parse_envelope(_fixture_text(name))
        law = _LAW_FOR_SPACE[env.space]
        ok, reasons, _ = _verify_envelope(law, env)
        rep.lines.append(f"{name}: {'PASS' if ok else 'FAIL'}")
        rep.artifacts.append(
            {"fixture": name, "verdict": "verified" if ok else "failed"}
        )
        if ok:
            passed += 1
        else:
            rep.reasons.extend(f"{name}: {r}" for r in reasons)
    rep.lines.append(f"{passed}/{len(FIXTURES)} worked examples verified")
    rep.verdict = passed == len(FIXTURES)
    return rep


# -- wiring ----------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cubecomp",
        description="exact composition laws for forms, cubes and their relatives",
    )
    sub = p.add_subparsers(dest="command", required=True)

    cg = sub.add_parser(
        "classgroup", help="list the narrow class group at a discriminant"
    )
    cg.add_argument("--discriminant", type=int, required=True)
    cg.add_argument("--json", action="store_true")
    cg.set_defaults(func=cmd_classgroup)

    co = sub.add_parser(
        "compose", help="compose classes from an envelope of objects"
    )
    co.add_argument("--in", dest="infile", required=True, metavar="FILE")
    co.add_argument("--json", action="store_true")
    co.set_defaults(func=cmd_compose)

    ve = sub.add_parser("verify", help="check a composition identity exactly")
    ve.add_argument(
        "--law",
        required=True,
        choices=("gauss", "cube", "cubic", "pair", "quat", "senary"),
    )
    ve.add_argument("--in", dest="infile", metavar="FILE")
    ve.add_argument("--discriminant", type=int)
    ve.add_argument("--json", action="store_true")
    ve.set_defaults(func=cmd_verify)

    du = sub.add_parser(
        "dual", help="solve for witness cubes dual to three composable cubes"
    )
    du.add_argument("--in", dest="infile", required=True, metavar="FILE")
    du.add_argument("--json", action="store_true")
    du.set_defaults(func=cmd_dual)

    ex = sub.add_parser(
        "examples", help="replay the bundled worked examples"
    )
    ex.add_argument("--json", action="store_true")
    ex.set_defaults(func=cmd_examples)

    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        rep = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UnsupportedDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    rep.elapsed = time.perf_counter() - t0
    if args.json:
        print(json.dumps(rep.to_json(), indent=2))
    else:
        rep.print_human(sys.stdout)
    return rep.exit_code()


if __name__ == "__main__":
    raise SystemExit(main())
