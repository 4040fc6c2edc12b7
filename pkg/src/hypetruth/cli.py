"""Command-line entry point.

Every subcommand builds a `Report`: ordered key/value lines plus a verdict.
Text output prints `key: value`; machine output prints `key=value` with
no timing information, so it can be diffed against stored golden files.
Exit codes: 0 success, 1 check or audit failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Report:
    title: str
    ok: bool = True
    items: list = field(default_factory=list)
    timings: list = field(default_factory=list)

    def add(self, key: str, value) -> None:
        self.items.append((key, value))

    def extend(self, prefix: str, lines) -> None:
        for line in lines:
            key, sep, val = line.partition(": ")
            self.add(f"{prefix}.{key}" if sep else prefix, val if sep else key)

    def time(self, key: str, seconds: float) -> None:
        self.timings.append((key, seconds))

    def render(self, fmt: str) -> str:
        if fmt == "machine":
            out = [f"report={self.title}", f"ok={'true' if self.ok else 'false'}"]
            out += [f"{k.replace(' ', '_')}={v}" for k, v in self.items]
        else:
            out = [f"== {self.title}: {'OK' if self.ok else 'FAILED'}"]
            out += [f"{k}: {v}" for k, v in self.items]
            out += [f"time {k}: {s:.3f}s" for k, s in self.timings]
        return "\n".join(out) + "\n"


# ------------------------------------------------------------------ helpers


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _abstraction(text: str):
    """`v3. body` or a formula whose variable v0 is the abstracted one."""
    from .parser import parse, parse_term
    from .syntax import Abstraction, Var

    head, dot, body = text.partition(".")
    if dot and head.strip().startswith("v") and head.strip()[1:].isdigit():
        v = parse_term(head.strip())
        if isinstance(v, Var):
            return Abstraction(v.index, parse(body))
    return Abstraction(0, parse(text))


def _formula(text: str):
    from .parser import ParseError, parse

    try:
        return parse(text)
    except ParseError as exc:
        raise UsageError(f"cannot parse formula: {exc}") from None


def _write_script(path: str | None, d, thy: str, header=()) -> None:
    from .script import write_script

    if path:
        Path(path).write_text(write_script(d, thy, header=header), encoding="utf-8")


# ------------------------------------------------------------------ subcommands


def cmd_check(args) -> Report:
    from .kernel import Theory, check, theory
    from .script import ScriptError, read_script
    from .syntax import Lang

    rep = Report(f"check {Path(args.file).name}")
    text = _read(args.file)
    try:
        sc = read_script(text)
    except ScriptError as exc:
        rep.ok = False
        rep.add("status", "malformed")
        rep.add("error", str(exc))
        return rep
    name = args.theory or sc.theory or "KFL*"
    try:
        thy = theory(name)
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    if args.lang:
        try:
            lang = Lang.parse(args.lang)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        thy = Theory(thy.name, lang, thy.schemas, thy.rules)
    t0 = time.perf_counter()
    res = check(sc.root, thy, sc.hypotheses)
    rep.time("kernel", time.perf_counter() - t0)
    rep.ok = res.ok
    rep.add("theory", thy.name)
    rep.add("language", thy.lang.value if thy.lang else "any")
    rep.add("end-sequent", str(sc.root.conclusion))
    for line in res.lines():
        key, _, val = line.partition(": ")
        rep.add(key, val)
    return rep


def cmd_derive(args) -> Report:
    from .derivers import DeriveError, derive_lem, derive_ti, gentzen_jump, jump_slots, veblen_jump
    from .kernel import check
    from .syntax import Var, mentions_pred, Tr

    rep = Report(f"derive {args.what}")
    try:
        if args.what == "ti":
            if args.formula is None or args.tower is None:
                raise UsageError("derive ti needs --formula and --tower")
            A = _abstraction(args.formula)
            thy = "KFL" if mentions_pred(A.body, Tr) else "HYA"
            t0 = time.perf_counter()
            d = derive_ti(A, args.tower)
            res = check(d, thy)
            rep.time("generate+check", time.perf_counter() - t0)
            rep.ok = res.ok
            rep.add("theory", thy)
            rep.add("end-sequent", str(d.conclusion))
            rep.extend("kernel", res.lines())
            _write_script(args.out, d, thy, [f"transfinite induction up to tower {args.tower}"])
        elif args.what == "recapture":
            if args.formula is None:
                raise UsageError("derive recapture needs --formula")
            a = _formula(args.formula)
            d = derive_lem(a)
            res = check(d, "G1h=")
            rep.ok = res.ok
            rep.add("theory", "G1h=")
            rep.add("end-sequent", str(d.conclusion))
            rep.extend("kernel", res.lines())
            _write_script(args.out, d, "G1h=", [f"excluded middle for {a}"])
        elif args.what == "jump":
            if args.formula is not None:
                A = _abstraction(args.formula)
                J = gentzen_jump(A)
                rep.add("jump", f"v{J.var}. {J.body}")
            if args.ordinal is not None:
                from .ordinals import parse_ord, show

                try:
                    xi = parse_ord(args.ordinal)
                except ValueError as exc:
                    raise UsageError(f"cannot parse ordinal: {exc}") from None
                f = veblen_jump(xi, Var(0))
                hs, es = jump_slots(f)
                rep.add("ordinal", show(xi))
                rep.add("formula", str(f))
                rep.add("h-slot", str(hs))
                rep.add("e-slot", str(es))
            if args.formula is None and args.ordinal is None:
                raise UsageError("derive jump needs --ordinal or --formula")
    except DeriveError as exc:
        rep.ok = False
        rep.add("error", str(exc))
    return rep


def cmd_ord(args) -> Report:
    from .ordinals import compare, e_of, h_of, ord_encode, parse_ord, show

    def p(text):
        try:
            return parse_ord(text)
        except ValueError as exc:
            raise UsageError(f"cannot parse ordinal {text!r}: {exc}") from None

    rep = Report(f"ord {args.op}")
    if args.op == "cmp":
        if len(args.args) != 2:
            raise UsageError("ord cmp takes two notations")
        a, b = (p(x) for x in args.args)
        rep.add("result", compare(a, b))
    else:
        if len(args.args) != 1:
            raise UsageError("ord info takes one notation")
        x = p(args.args[0])
        rep.add("normal form", show(x))
        rep.add("code", ord_encode(x))
        if x:
            rep.add("e", show(e_of(x)))
            rep.add("h", show(h_of(x)))
    return rep


def cmd_models(args) -> Report:
    from .kernel import Sequent
    from .parser import ParseError, parse_sequent
    from .semantics import Inconclusive, countermodel

    rep = Report("models find")
    try:
        seq = Sequent.of(*parse_sequent(args.sequent))
    except ParseError as exc:
        raise UsageError(f"cannot parse sequent: {exc}") from None
    if args.max_states < 1 or args.max_atoms < 0:
        raise UsageError("bounds must be positive")
    rep.add("sequent", str(seq))
    try:
        cm = countermodel(seq, args.max_states, args.max_atoms)
    except Inconclusive as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if cm is None:
        rep.add("result", f"no countermodel with at most {args.max_states} states")
    else:
        rep.add("result", "countermodel")
        rep.extend("model", cm.describe())
    return rep


def _fixpoint_report(rep: Report, fm) -> None:
    from .coding import encode
    from .fixpoint import liar, truthteller

    u = fm.universe
    rep.add("universe size", len(u))
    rep.add("MIN size", len(fm.MIN))
    rep.add("MAX size", len(fm.MAX))
    for name, f in (("liar", liar()), ("truthteller", truthteller())):
        if f in u:
            c = encode(f)
            rep.add(f"{name} in MIN", c in fm.MIN)
            rep.add(f"{name} in MAX", c in fm.MAX)


def _load_universe(path: str):
    from .fixpoint import UniverseError, load_universe

    _read(path)
    try:
        return load_universe(path)
    except (UniverseError, ValueError, KeyError) as exc:
        raise UsageError(f"bad universe file: {exc}") from None


def cmd_fixpoint(args) -> Report:
    from .fixpoint import build_model, dump_model, fixed_point_problems

    rep = Report(f"fixpoint {Path(args.universe).name}")
    u, p_ext = _load_universe(args.universe)
    t0 = time.perf_counter()
    fm = build_model(u, p_ext)
    rep.time("iterate", time.perf_counter() - t0)
    _fixpoint_report(rep, fm)
    probs = fixed_point_problems(fm)
    rep.ok = not probs
    for p in probs:
        rep.add("problem", p)
    if args.emit:
        Path(args.emit).write_text(json.dumps(dump_model(fm)), encoding="utf-8")
        rep.add("model written", Path(args.emit).name)
    return rep


def audit_model(fm, rep: Report) -> None:
    from .fixpoint import audit_kfl, disquotation_failures, fixed_point_problems

    probs = fixed_point_problems(fm)
    for p in probs:
        rep.add("problem", p)
    a = audit_kfl(fm)
    rep.extend("axioms", a.lines())
    bad = disquotation_failures(fm)
    rep.add("disquotation failures", len(bad))
    for f in bad[:10]:
        rep.add("disquotation", str(f))
    rep.ok = not probs and a.ok and not bad


def cmd_audit(args) -> Report:
    from .fixpoint import UniverseError, load_model

    rep = Report(f"audit {Path(args.model).name}")
    try:
        data = json.loads(_read(args.model))
        fm = load_model(data)
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"bad model file: {exc}") from None
    except UniverseError as exc:
        rep.ok = False
        rep.add("problem", str(exc))
        return rep
    t0 = time.perf_counter()
    try:
        audit_model(fm, rep)
    except UniverseError as exc:
        rep.ok = False
        rep.add("problem", str(exc))
    rep.time("audit", time.perf_counter() - t0)
    return rep


def cmd_translate(args) -> Report:
    from .translate import TranslationError, audit_translation, context_for, sigma, tau

    if args.action == "audit":
        from .fixpoint import build_model

        if not args.universe:
            raise UsageError("translate audit needs --universe")
        rep = Report(f"translate audit {Path(args.universe).name}")
        u, p_ext = _load_universe(args.universe)
        t0 = time.perf_counter()
        r = audit_translation(context_for(build_model(u, p_ext)))
        rep.time("audit", time.perf_counter() - t0)
        rep.ok = r.ok
        rep.extend("translation", r.lines())
        return rep
    if args.formula is None or args.sigma == args.tau:
        raise UsageError("translate needs --formula and exactly one of --sigma, --tau")
    rep = Report("translate sigma" if args.sigma else "translate tau")
    a = _formula(args.formula)
    try:
        rep.add("result", str(sigma(a) if args.sigma else tau(a)))
    except TranslationError as exc:
        rep.ok = False
        rep.add("error", str(exc))
    return rep


def cmd_regress(args) -> Report:
    from .regress import run_all

    if not args.all:
        raise UsageError("regress currently supports only --all")
    return run_all(Path(args.root))


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hypetruth", description="HYPE/KFL proof workbench")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("check", help="kernel-check a proof script")
    c.add_argument("file")
    c.add_argument("--lang", help="language tag every formula must belong to")
    c.add_argument("--theory", help="override the theory named in the file")
    c.set_defaults(fn=cmd_check)

    d = sub.add_parser("derive", help="generate derivations")
    d.add_argument("what", choices=("ti", "recapture", "jump"))
    d.add_argument("--formula")
    d.add_argument("--tower", type=int)
    d.add_argument("--ordinal")
    d.add_argument("--out")
    d.set_defaults(fn=cmd_derive)

    o = sub.add_parser("ord", help="ordinal notation calculator")
    o.add_argument("op", choices=("cmp", "info"))
    o.add_argument("args", nargs="+")
    o.set_defaults(fn=cmd_ord)

    m = sub.add_parser("models", help="bounded countermodel search")
    m.add_argument("op", choices=("find",))
    m.add_argument("--sequent", required=True)
    m.add_argument("--max-states", type=int, default=3)
    m.add_argument("--max-atoms", type=int, default=2)
    m.set_defaults(fn=cmd_models)

    f = sub.add_parser("fixpoint", help="compute the fixed points of a universe")
    f.add_argument("--universe", required=True)
    f.add_argument("--emit")
    f.set_defaults(fn=cmd_fixpoint)

    a = sub.add_parser("audit", help="audit the truth axioms in a stored model")
    a.add_argument("--model", required=True)
    a.set_defaults(fn=cmd_audit)

    t = sub.add_parser("translate", help="translations into the classical language")
    t.add_argument("action", nargs="?", choices=("audit",))
    t.add_argument("--sigma", action="store_true")
    t.add_argument("--tau", action="store_true")
    t.add_argument("--formula")
    t.add_argument("--universe")
    t.set_defaults(fn=cmd_translate)

    r = sub.add_parser("regress", help="replay every stored proof and audit")
    r.add_argument("--all", action="store_true")
    r.add_argument("--root", default=".", help="directory holding proofs/ and universes/")
    r.set_defaults(fn=cmd_regress)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        rep = args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(rep.render(args.format))
    return EXIT_OK if rep.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
