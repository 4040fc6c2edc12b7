"""The axiom catalogue: decidable recognizers for initial sequents.

Most schemas are sequent templates with term metavariables `?x`; matching is
up to renaming of bound variables and never lets a metavariable capture a
bound variable.  Ref/Rep, the closed-equation evaluator and the induction
axiom have dedicated recognizers.
"""

from __future__ import annotations

from functools import lru_cache

from .syntax import (
    All, Bot, Eq, Fn, Imp, Meta, Not, Num, Or, Plus, Succ, Times, Var, ZERO,
    alpha_key, conj, formula_children, formula_terms, fresh_var, is_closed,
    succ, term_children, term_vars, Abstraction, ATOMIC,
)

TEMPLATES = {
    "Ref": "=> ?t=?t",
    "Q1": "=> !(S(?s)=0)",
    "Q2": "S(?s)=S(?t) => ?s=?t",
    "Q4": "=> ?s+0=?s",
    "Q5": "=> ?s+S(?t)=S(?s+?t)",
    "Q6": "=> ?s*0=0",
    "Q7": "=> ?s*S(?t)=?s*?t+?s",
    "KFL1": "cterm(?x)=1 & cterm(?y)=1 => Tr(eqdot(?x,?y)) <-> val(?x)=val(?y)",
    "KFL2": "=> Tr(trdot(num(?x))) <-> Tr(?x)",
    "KFL3": "sent(?x)=1 => Tr(negdot(?x)) <-> !Tr(?x)",
    "KFL4": "sent(?x)=1 & sent(?y)=1 => Tr(vordot(?x,?y)) <-> Tr(?x) | Tr(?y)",
    "KFL5": ("sent(alldot(?v,?x))=1 & isvar(?v)=1 => "
             "Tr(alldot(?v,?x)) <-> all v0. (cterm(v0)=1 -> Tr(sub(?x,?v,v0)))"),
    "KFL6": "Tr(?x) => sent(?x)=1",
    "KFL-P": "=> Tr(pdot(num(?x))) <-> P(?x)",
    "P-class": "=> all v0. (P(v0) | !P(v0))",
}

# Arithmetical facts about the notation system that derivations may cite as
# leaves.  `prec` is the primitive recursive ordering, `oadd`, `opow` and
# `omul` are ordinal sum, omega-power and multiplication by a natural number.
ORD_LEMMAS = {
    "cases": "?r < oadd(?u, opow(?s)) => ?s=0, 0 < ?s",
    "zero": "?t < 0 =>",
    "one": "?t < 1 => 0=?t",
    "jump0": "?s=0, ?r < oadd(?u, opow(?s)) => ?r < ?u, ?u=?r",
    "cnf": ("0 < ?s, ?r < oadd(?u, opow(?s)) => "
            "ex v0. ex v1. (v1 < ?s & ?r < oadd(?u, omul(opow(v1), v0)))"),
    "mul0": "?r < oadd(?u, omul(?a, 0)) => ?r < ?u",
    "mulS": "=> oadd(oadd(?u, omul(?a, ?n)), ?a) = oadd(?u, omul(?a, S(?n)))",
}
QUANTIFIER_FREE_ORD_LEMMAS = ("cases", "zero", "one", "jump0", "mul0", "mulS")


@lru_cache(maxsize=None)
def template(schema: str):
    from .parser import parse_sequent

    if schema.startswith("ord-lemma:"):
        text = ORD_LEMMAS[schema.split(":", 1)[1]]
    else:
        text = TEMPLATES[schema]
    ante, succ_ = parse_sequent(text)
    return tuple(alpha_key(f) for f in ante), tuple(alpha_key(f) for f in succ_)


def schema_ids() -> list[str]:
    return (["ID", "Lbot", "Rep", "hya-eval", "IND->"] + list(TEMPLATES)
            + [f"ord-lemma:{k}" for k in ORD_LEMMAS])


# ------------------------------------------------------------------ matching


def _match_term(p, t, env: dict) -> bool:
    if isinstance(p, Meta):
        if term_vars(t) and min(term_vars(t)) < 0:
            return False  # would capture a bound variable
        if p.name in env:
            return env[p.name] == t
        env[p.name] = t
        return True
    if isinstance(p, Succ) and isinstance(t, Num):
        return t.value >= 1 and _match_term(p.arg, Num(t.value - 1), env)
    if type(p) is not type(t):
        return False
    if isinstance(p, (Num, Var)):
        return p == t
    if isinstance(p, Fn) and p.name != t.name:
        return False
    return all(_match_term(a, b, env) for a, b in zip(term_children(p), term_children(t)))


def _match_formula(p, f, env: dict) -> bool:
    if type(p) is not type(f):
        return False
    if isinstance(p, All) and p.var != f.var:
        return False
    if isinstance(p, ATOMIC):
        if isinstance(p, Bot):
            return True
        return all(_match_term(a, b, env) for a, b in zip(formula_terms(p), formula_terms(f)))
    return all(_match_formula(a, b, env) for a, b in zip(formula_children(p), formula_children(f)))


def _match_side(ps: tuple, fs: tuple, env: dict):
    """Yield extended environments matching the multisets ps and fs."""
    if len(ps) != len(fs):
        return
    if not ps:
        yield env
        return
    p0 = ps[0]
    for i, f in enumerate(fs):
        e = dict(env)
        if _match_formula(p0, f, e):
            yield from _match_side(ps[1:], fs[:i] + fs[i + 1:], e)


def match_template(seq, schema: str):
    """The metavariable binding of the first match, or None."""
    ta, ts = template(schema)
    ante = tuple(alpha_key(f) for f in seq.ante)
    succ_ = tuple(alpha_key(f) for f in seq.succ)
    for env in _match_side(ta, ante, {}):
        for env2 in _match_side(ts, succ_, env):
            return env2
    return None


# ------------------------------------------------------------------ special schemas


def _pred(t):
    if isinstance(t, Succ):
        return t.arg
    if isinstance(t, Num) and t.value >= 1:
        return Num(t.value - 1)
    return None


def _rep_term(x, y, s, t) -> bool:
    if x == y or (x == s and y == t):
        return True
    if isinstance(x, (Num, Succ)) and isinstance(y, (Num, Succ)):
        # peel one successor off both sides (numerals are stored compactly)
        px, py = _pred(x), _pred(y)
        return px is not None and py is not None and _rep_term(px, py, s, t)
    if type(x) is not type(y):
        return False
    if isinstance(x, Fn) and x.name != y.name:
        return False
    kx, ky = term_children(x), term_children(y)
    return bool(kx) and len(kx) == len(ky) and all(_rep_term(a, b, s, t) for a, b in zip(kx, ky))


def _rep_formula(x, y, s, t) -> bool:
    if x == y:
        return True
    if type(x) is not type(y):
        return False
    if isinstance(x, All) and x.var != y.var:
        return False
    if isinstance(x, ATOMIC):
        return all(_rep_term(a, b, s, t) for a, b in zip(formula_terms(x), formula_terms(y)))
    return all(_rep_formula(a, b, s, t) for a, b in zip(formula_children(x), formula_children(y)))


def is_rep(seq) -> bool:
    """s=t, A(s) => A(t), replacing any selection of occurrences of s."""
    if len(seq.ante) != 2 or len(seq.succ) != 1:
        return False
    y = alpha_key(seq.succ[0])
    for e, x in (seq.ante, reversed(seq.ante)):
        if isinstance(e, Eq):
            if _rep_formula(alpha_key(x), y, e.left, e.right):
                return True
    return False


def _closed_value(t):
    from .coding import EvalError, value

    if not is_closed(t) or _has_meta(t):
        return None
    try:
        return value(t)
    except (EvalError, RecursionError):
        return None


def _has_meta(t) -> bool:
    return isinstance(t, Meta) or any(_has_meta(c) for c in term_children(t))


def is_hya_eval(seq) -> bool:
    """=> s=t for closed terms of equal value, => !(s=t) for unequal ones."""
    if seq.ante or len(seq.succ) != 1:
        return False
    f = seq.succ[0]
    want = True
    if isinstance(f, Not):
        f, want = f.body, False
    if not isinstance(f, Eq):
        return False
    a, b = _closed_value(f.left), _closed_value(f.right)
    return a is not None and b is not None and (a == b) == want


def is_induction(seq) -> bool:
    """=> A(0) & all x (A(x) -> A(Sx)) -> all x A(x)."""
    if seq.ante or len(seq.succ) != 1:
        return False
    f = seq.succ[0]
    if not (isinstance(f, Imp) and isinstance(f.right, All)):
        return False
    A = Abstraction(f.right.var, f.right.body)
    x = fresh_var(f)
    expected = Imp(conj(A(ZERO), All(x, Imp(A(Var(x)), A(succ(Var(x)))))), f.right)
    return alpha_key(expected) == alpha_key(f)


def is_axiom(seq, schema: str) -> bool:
    if schema == "ID":
        return (len(seq.ante) == 1 and len(seq.succ) == 1
                and alpha_key(seq.ante[0]) == alpha_key(seq.succ[0]))
    if schema == "Lbot":
        return len(seq.ante) == 1 and not seq.succ and isinstance(seq.ante[0], Bot)
    if schema == "Rep":
        return is_rep(seq)
    if schema == "hya-eval":
        return is_hya_eval(seq)
    if schema == "IND->":
        return is_induction(seq)
    if schema in TEMPLATES or (schema.startswith("ord-lemma:") and schema[10:] in ORD_LEMMAS):
        return match_template(seq, schema) is not None
    return False


def instantiate(schema: str, **terms):
    """The template instance under a metavariable assignment (as a Sequent)."""
    from .kernel import Sequent

    ta, ts = template(schema)
    return Sequent(tuple(_inst(f, terms) for f in ta), tuple(_inst(f, terms) for f in ts))


def _inst_term(t, env):
    if isinstance(t, Meta):
        return env[t.name]
    if isinstance(t, Succ):
        return succ(_inst_term(t.arg, env))
    if isinstance(t, Plus):
        return Plus(_inst_term(t.left, env), _inst_term(t.right, env))
    if isinstance(t, Times):
        return Times(_inst_term(t.left, env), _inst_term(t.right, env))
    if isinstance(t, Fn):
        return Fn(t.name, tuple(_inst_term(a, env) for a in t.args))
    return t


def _inst(f, env):
    """Instantiate metavariables; bound placeholders are renamed to fresh
    non-negative variables that avoid the substituted terms."""
    from .syntax import Eq as _Eq, Fa, Pr, Tr

    avoid = set()
    for t in env.values():
        avoid |= term_vars(t)

    def go(g, ren):
        if isinstance(g, _Eq):
            return _Eq(_ren(_inst_term(g.left, env), ren), _ren(_inst_term(g.right, env), ren))
        if isinstance(g, (Tr, Fa, Pr)):
            return type(g)(_ren(_inst_term(g.arg, env), ren))
        if isinstance(g, Not):
            return Not(go(g.body, ren))
        if isinstance(g, Or):
            return Or(go(g.left, ren), go(g.right, ren))
        if isinstance(g, Imp):
            return Imp(go(g.left, ren), go(g.right, ren))
        if isinstance(g, All):
            v = max(avoid | set(ren.values()) | {-1}) + 1
            inner = dict(ren)
            inner[g.var] = v
            return All(v, go(g.body, inner))
        return g

    return go(f, {})


def _ren(t, ren):
    for old, new in ren.items():
        t = _subst_neg(t, old, new)
    return t


def _subst_neg(t, old, new):
    from .syntax import subst_term

    return subst_term(t, old, Var(new))


__all__ = ["is_axiom", "instantiate", "match_template", "schema_ids", "ORD_LEMMAS"]
