"""Batch replay of every stored proof script, generator and audit.

The output is deterministic: rows are produced in a fixed order and the
machine rendering carries no timings.
"""

from __future__ import annotations

import time
from pathlib import Path

from .kernel import Derivation, Sequent, _walk, check
from .syntax import Atom


def mutants(root: Derivation, extra=None):
    """Copies of the tree with one node's conclusion enlarged by one formula."""
    extra = extra or Atom("mut")
    nodes = _walk(root)
    for i in range(len(nodes)):
        for side in ("ante", "succ"):
            yield _mutate(root, nodes[i], side, extra)


def _mutate(root: Derivation, target: Derivation, side: str, extra) -> Derivation:
    memo: dict = {}

    def go(d: Derivation) -> Derivation:
        if id(d) in memo:
            return memo[id(d)]
        prem = tuple(go(p) for p in d.premises)
        concl = d.conclusion
        if d is target:
            a, s = list(concl.ante), list(concl.succ)
            (a if side == "ante" else s).append(extra)
            concl = Sequent.of(a, s)
        out = Derivation(concl, d.rule, prem, d.params)
        memo[id(d)] = out
        return out

    return go(root)


RECAPTURE_SAMPLE = (
    "0=0", "!(0=1)", "0=1 | !(0=1)", "all v0. v0=v0", "!!(S(0)=1)",
    "all v0. (v0=0 | !(v0=0))", "!all v0. !(v0+0=v0)",
)
TI_FORMULA = "v0. v0=v0"


def run_all(root: Path):
    from .cli import Report
    from .derivers import derive_lem, derive_ti
    from .fixpoint import audit_kfl, build_model, disquotation_failures, fixed_point_problems, load_universe
    from .ordinals import compare, gamma_seq, parse_ord
    from .parser import parse, parse_sequent
    from .script import load
    from .semantics import countermodel
    from .translate import audit_translation, context_for

    rep = Report("regress")
    rows: list[tuple[str, bool]] = []

    def row(name: str, ok: bool, detail: str = "") -> None:
        rows.append((name, ok))
        rep.add(name, ("pass" if ok else "FAIL") + (f" ({detail})" if detail else ""))

    for path in sorted((root / "proofs").glob("*.kfl")):
        t0 = time.perf_counter()
        sc = load(path)
        res = check(sc.root, sc.theory or "KFL*", sc.hypotheses)
        killed = sum(not check(m, sc.theory or "KFL*", sc.hypotheses).ok for m in mutants(sc.root))
        total = 2 * res.nodes
        row(f"proof {path.stem}", res.ok and killed == total,
            f"{res.nodes} nodes, {killed}/{total} mutants rejected")
        rep.time(path.stem, time.perf_counter() - t0)

    for text in RECAPTURE_SAMPLE:
        res = check(derive_lem(parse(text)), "G1h=")
        row(f"recapture {text}", res.ok, f"{res.nodes} nodes")

    from .cli import _abstraction

    A = _abstraction(TI_FORMULA)
    sizes = []
    for n in range(3):
        t0 = time.perf_counter()
        res = check(derive_ti(A, n), "HYA")
        sizes.append(res.nodes)
        row(f"ti tower {n}", res.ok, f"{res.nodes} nodes")
        rep.time(f"ti {n}", time.perf_counter() - t0)
    row("ti sizes monotone", sizes == sorted(sizes) and len(set(sizes)) == len(sizes))

    for text, want in (("=> p | !p", True), ("p & !p =>", True), ("=> !!p -> p", False)):
        seq = Sequent.of(*parse_sequent(text))
        found = countermodel(seq, 3, 2) is not None
        row(f"countermodel {text}", found == want, "found" if found else "none")

    for path in sorted((root / "universes").glob("*.toml")):
        t0 = time.perf_counter()
        u, p_ext = load_universe(path)
        fm = build_model(u, p_ext)
        probs = fixed_point_problems(fm)
        a = audit_kfl(fm)
        dq = disquotation_failures(fm)
        row(f"universe {path.stem}", not probs and a.ok and not dq,
            f"{len(u)} sentences, {a.checked} axiom instances")
        tr = audit_translation(context_for(fm))
        row(f"translation {path.stem}", tr.ok, f"{tr.sentences} sentences")
        rep.time(path.stem, time.perf_counter() - t0)

    row("ord phi(w,0) vs w^w", compare(parse_ord("phi(w,0)"), parse_ord("w^w")) == "Greater")
    gs = [gamma_seq(n) for n in range(6)]
    row("gamma sequence increasing", all(compare(x, y) == "Less" for x, y in zip(gs, gs[1:])))

    rep.ok = all(ok for _, ok in rows)
    rep.add("summary", f"{sum(ok for _, ok in rows)}/{len(rows)} passed")
    return rep


__all__ = ["mutants", "run_all", "RECAPTURE_SAMPLE"]
