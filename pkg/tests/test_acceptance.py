"""Acceptance criteria, each run against its time limit.

Every test records one line `criterion N: PASS|FAIL (seconds)`, listed at the end of the run.
"""

from __future__ import annotations

import random
import time
from functools import cmp_to_key
from contextlib import contextmanager

from hypetruth import builder as b
from hypetruth.cli import _abstraction
from hypetruth.derivers import derive_lem, derive_ti
from hypetruth.fixpoint import (
    audit_kfl, build_model, build_universe, disquotation_failures, liar, load_universe,
    max_fixed_point, min_fixed_point, phi_step, random_chain, star,
)
from hypetruth.coding import encode
from hypetruth.kernel import Derivation, RuleError, Sequent, check, conclude
from hypetruth.ordinals import (
    ZERO, add, compare, e_of, gamma_seq, h_of, nat, omega_pow, random_ord,
)
from hypetruth.parser import parse, parse_sequent
from hypetruth.regress import mutants
from hypetruth.script import load
from hypetruth.semantics import countermodel, default_pool, models, qn_instances, valid
from hypetruth.syntax import Abstraction, All, Not, Num, Or, Pr, Tr, rank
from hypetruth.translate import audit_translation, context_for

from conftest import CRITERIA, ROOT, random_formula
from oracles import below_omega_omega


@contextmanager
def criterion(n: int, limit: float):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        ok = ok and dt < limit
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({dt:.2f}s, limit {limit:g}s)"
        CRITERIA.append(line)
        print("\n" + line)
    assert dt < limit, f"criterion {n} took {dt:.2f}s"


def test_criterion_1_proof_trees_and_mutants():
    with criterion(1, 1.0):
        for path in sorted((ROOT / "proofs").glob("*.kfl")):
            sc = load(path)
            thy = sc.theory or "KFL*"
            rep = check(sc.root, thy, sc.hypotheses)
            assert rep.ok, path.name
            assert all(not check(m, thy, sc.hypotheses).ok for m in mutants(sc.root)), path.name


def test_criterion_2_recapture():
    rng = random.Random(2024)
    sample = []
    while len(sample) < 20:
        f = random_formula(rng, 6, truth=False, closed=True)
        if rank(f) <= 6:
            sample.append(f)
    with criterion(2, 10.0):
        for f in sample:
            d = derive_lem(f)
            assert d.conclusion == Sequent.of([], [f, Not(f)])
            assert check(d, "G1h=").ok, str(f)


def test_criterion_3_transfinite_induction():
    A = _abstraction("v0. v0=v0")
    sizes = []
    with criterion(3, 60.0):
        for n in range(3):
            t0 = time.perf_counter()
            rep = check(derive_ti(A, n), "HYA")
            assert rep.ok
            sizes.append(rep.nodes)
            if n == 2:
                assert time.perf_counter() - t0 < 60.0
        assert sizes == sorted(sizes) and len(set(sizes)) == 3


def test_criterion_4_countermodels():
    with criterion(4, 30.0):
        for text in ("=> p | !p", "p & !p =>"):
            seq = Sequent.of(*parse_sequent(text))
            cm = countermodel(seq, 3, 2)
            assert cm is not None and not valid(cm.model, seq)
        ms = list(models(3, ["p", "q"]))
        for name, f in qn_instances(default_pool()[:4]):
            seq = Sequent((), (f,))
            assert all(valid(m, seq) for m in ms), name


def test_criterion_5_liar_universe(liar_model):
    fm = liar_model
    u = fm.universe
    L = encode(liar())
    with criterion(5, 30.0):
        MIN, MAX = min_fixed_point(u), max_fixed_point(u)
        assert MIN == fm.MIN and MAX == fm.MAX
        nL = encode(Not(liar()))
        assert L not in MIN and nL not in MIN
        assert L in MAX and nL in MAX
        assert MIN <= MAX and star(MIN, u) == MAX
        rng = random.Random(5)
        for _ in range(100):
            chain = random_chain(u, rng)
            steps = [phi_step(u, X) for X in chain]
            assert all(x <= y for x, y in zip(steps, steps[1:]))
        assert audit_kfl(fm).ok
        assert not disquotation_failures(fm)


def test_criterion_6_schematic_predicate():
    p_ext = frozenset(range(0, 21, 2))
    with criterion(6, 30.0):
        u = build_universe([parse("0=0")], depth=2, liar_flag=True, bound=3, p_atoms=23)
        fm = build_model(u, p_ext)
        rep = audit_kfl(fm)
        assert rep.ok and rep.by_schema.get("KFL-P", 0) >= 23
        B = Abstraction(0, parse("v0=0"))
        body = parse("v0=0")
        cl = b.rall(b.ror(derive_lem(body), Or(body, Not(body))), All(0, Or(body, Not(body))), 0)
        good = conclude("Subst", [cl, b.idax(Pr(Num(0)))], B=B)
        assert check(good, "KFL*").ok
        main = b.weaken(b.idax(Pr(Num(0))), [Tr(Num(0))])
        try:
            conclude("Subst", [cl, main], B=B)
            raised = False
        except RuleError:
            raised = True
        assert raised
        forged = Derivation(Sequent.of([Tr(Num(0)), parse("0=0")], [parse("0=0")]),
                            "Subst", (cl, main), {"B": B})
        assert not check(forged, "KFL*").ok


def _exps_to_ord(exps):
    out = ZERO
    for e in exps:
        out = add(out, omega_pow(nat(e)))
    return out


def test_criterion_7_ordinals():
    rng = random.Random(7)
    with criterion(7, 10.0):
        xs = [random_ord(rng, 3) for _ in range(10_000)]
        for x, y in zip(xs, xs[1:] + xs[:1]):
            c, d = compare(x, y), compare(y, x)
            assert {c, d} == {"Less", "Greater"} or c == d == "Equal"
            assert (c == "Equal") == (x == y)
        ordered = sorted(set(xs), key=cmp_to_key(lambda x, y: {"Less": -1, "Equal": 0, "Greater": 1}[compare(x, y)]))
        assert all(compare(x, y) == "Less" for x, y in zip(ordered, ordered[1:]))
        for _ in range(2000):  # transitivity on random triples of the sorted list
            i, j, k = sorted(rng.sample(range(len(ordered)), 3))
            assert compare(ordered[i], ordered[k]) == "Less"
        items = below_omega_omega(8)
        ords = [_exps_to_ord(e) for e in items]
        for x, ex in zip(ords, items):
            for y, ey in zip(ords, items):
                want = "Less" if ex < ey else "Greater" if ex > ey else "Equal"
                assert compare(x, y) == want
        n = 0
        for x in xs:
            if x != ZERO:
                assert add(h_of(x), omega_pow(e_of(x))) == x
                n += 1
        while n < 10_000:
            x = random_ord(rng, 3)
            if x != ZERO:
                assert add(h_of(x), omega_pow(e_of(x))) == x
                n += 1
        gs = [gamma_seq(k) for k in range(6)]
        assert all(compare(x, y) == "Less" for x, y in zip(gs, gs[1:]))


def test_criterion_8_translation_audit():
    paths = sorted((ROOT / "universes").glob("*.toml"))
    assert paths
    fms = [build_model(*load_universe(p)) for p in paths]
    with criterion(8, 10.0):
        for p, fm in zip(paths, fms):
            rep = audit_translation(context_for(fm))
            assert rep.ok, (p.name, rep.failures[:3])
            assert rep.sentences > 0
