from __future__ import annotations

import random

import pytest

from hypetruth.coding import encode
from hypetruth.fixpoint import build_model, build_universe, liar
from hypetruth.parser import parse
from hypetruth.syntax import Fa, Fn, Imp, Not, Or, Pr, Tr, Var, conj
from hypetruth.translate import (
    TranslationContext, TranslationError, audit_translation, context_for, sigma, tau, tau_code,
)

from conftest import random_formula


def T(t):
    return Tr(Fn("taudot", (t,)))


def F(t):
    return Fa(Fn("taudot", (t,)))


def test_double_negation_clause():
    assert tau(parse("!!(0=0)")) == parse("0=0")


def test_negated_disjunction_clause():
    p, q = parse("Tr(0)"), parse("Tr(1)")
    assert tau(Not(Or(p, q))) == conj(tau(Not(p)), tau(Not(q)))


def test_negated_truth_clause():
    assert tau(parse("!Tr(v0)")) == F(Var(0))
    assert tau(parse("Tr(v0)")) == T(Var(0))


def test_negated_quantifier_clause():
    f = tau(parse("!all v0. Tr(v0)"))
    assert f == Not(parse("all v0. !F(taudot(v0))"))


def test_tau_rejects_conditional():
    with pytest.raises(TranslationError):
        tau(parse("0=0 -> 0=0"))


def test_sigma_clauses():
    a, b = parse("Tr(0)"), parse("0=1")
    assert sigma(Imp(a, b)) == Or(Not(sigma(a)), sigma(b))
    assert sigma(parse("!P(0)")) == Not(Pr(parse("P(0)").arg))
    assert sigma(parse("Tr(v1)")) == T(Var(1))
    assert sigma(parse("!Tr(v1)")) == F(Var(1))


def test_tau_total_on_truth_language():
    rng = random.Random(3)
    for _ in range(500):
        f = random_formula(rng, 4)
        g = tau(f)
        assert not any(isinstance(s, Imp) for s in _subs(g))


def _subs(f):
    from hypetruth.syntax import subformulas

    return list(subformulas(f))


def test_tau_fixes_negation_free_arithmetic():
    rng = random.Random(4)
    for _ in range(200):
        f = random_formula(rng, 3, truth=False)
        if not any(isinstance(s, Not) for s in _subs(f)):
            assert tau(f) == f
            assert tau(tau(f)) == tau(f)


def test_code_companion():
    f = parse("!!Tr(0)")
    assert tau_code(encode(f)) == encode(tau(f))
    assert tau_code(encode(parse("0=0 -> 0=0"))) == encode(parse("0=0 -> 0=0"))


@pytest.fixture(scope="module")
def ctx(liar_model):
    return context_for(liar_model)


def test_liar_translation_consistent(ctx, liar_model):
    L = liar()
    assert not ctx.holds(tau(L))
    assert encode(L) not in liar_model.MIN


def test_audit_clean(ctx):
    rep = audit_translation(ctx)
    assert rep.ok, rep.failures[:3]
    assert rep.sentences > 1000 and rep.negation_codes > 1000 and rep.axioms > 1000


def test_sigma_and_tau_agree_under_complete_extensions():
    u = build_universe([parse("0=1 | Tr(q(0=0))"), parse("all v0. !Tr(v0)")], 2, bound=3)
    fm = build_model(u)
    rng = random.Random(2)
    codes = sorted(u.codes)
    for _ in range(5):
        chosen = frozenset(c for c in codes if rng.random() < 0.5)
        ctx = TranslationContext(u, fm.MIN)
        # a complete interpretation: F is exactly the complement of T
        ctx._T = frozenset(tau_code(c) for c in chosen)
        ctx._F = frozenset(tau_code(c) for c in codes if c not in chosen)
        if ctx._T & ctx._F:
            continue
        for f in u.sentences:
            assert ctx.holds(sigma(f)) == ctx.holds(tau(f)), str(f)


def test_audit_detects_tampering(liar_model):
    ctx = context_for(liar_model)
    ctx._T = ctx._T - {encode(parse("0=0"))}
    assert not audit_translation(ctx, axioms=False).ok
