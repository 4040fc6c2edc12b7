"""Forward proof construction and macro-expansion of derived rules.

Everything here produces ordinary `Derivation` trees over the primitive
rules; nothing is trusted.  Contexts of two-premise rules are aligned by
weakening each premise up to the multiset union of both contexts.
"""

from __future__ import annotations

from collections import Counter

from .kernel import Derivation, Sequent, axiom, bag, conclude, remove
from .syntax import (
    BOT, All, Imp, Not, Or, Var, alpha_key, fresh_var, substitute,
)


# ------------------------------------------------------------------ basics


def ax(schema: str, ante=(), succ=()) -> Derivation:
    return axiom(schema, ante, succ)


def idax(a) -> Derivation:
    return axiom("ID", [a], [a])


def weaken(d: Derivation, ante=(), succ=()) -> Derivation:
    for a in ante:
        d = conclude("LW", [d], A=a)
    for b in succ:
        d = conclude("RW", [d], A=b)
    return d


def _missing(have, want) -> list:
    """Members of the multiset `want` not covered by `have`."""
    left = Counter(alpha_key(f) for f in have)
    out = []
    for f in want:
        k = alpha_key(f)
        if left[k]:
            left[k] -= 1
        else:
            out.append(f)
    return out


def _union(xs, ys) -> list:
    return list(xs) + _missing(xs, ys)


def weaken_to(d: Derivation, target: Sequent) -> Derivation:
    extra_a = _missing(d.conclusion.ante, target.ante)
    extra_s = _missing(d.conclusion.succ, target.succ)
    if _missing(target.ante, d.conclusion.ante) or _missing(target.succ, d.conclusion.succ):
        raise ValueError(f"cannot weaken {d.conclusion} to {target}")
    return weaken(d, extra_a, extra_s)


def cut(left: Derivation, right: Derivation, a) -> Derivation:
    """Cut on a: left proves ..., a and right proves a, ...; contexts merged."""
    la, ls = left.conclusion.ante, remove(left.conclusion.succ, a, "cut formula")
    ra, rs = remove(right.conclusion.ante, a, "cut formula"), right.conclusion.succ
    gamma, delta = _union(la, ra), _union(ls, rs)
    left = weaken_to(left, Sequent(tuple(gamma), tuple(delta) + (a,)))
    right = weaken_to(right, Sequent((a,) + tuple(gamma), tuple(delta)))
    return conclude("Cut", [left, right], A=a)


def contract(d: Derivation) -> Derivation:
    """Contract duplicate formulas on both sides."""
    changed = True
    while changed:
        changed = False
        for side, rule in (("ante", "LC"), ("succ", "RC")):
            seen = set()
            for f in getattr(d.conclusion, side):
                k = alpha_key(f)
                if k in seen:
                    d = conclude(rule, [d], A=f)
                    changed = True
                    break
                seen.add(k)
            if changed:
                break
    return d


def lor(d1: Derivation, d2: Derivation, a: Or) -> Derivation:
    """L∨ with context alignment."""
    g1 = remove(d1.conclusion.ante, a.left)
    g2 = remove(d2.conclusion.ante, a.right)
    gamma = _union(g1, g2)
    delta = _union(d1.conclusion.succ, d2.conclusion.succ)
    d1 = weaken_to(d1, Sequent((a.left,) + tuple(gamma), tuple(delta)))
    d2 = weaken_to(d2, Sequent((a.right,) + tuple(gamma), tuple(delta)))
    return conclude("LOr", [d1, d2], A=a)


def limp(d1: Derivation, d2: Derivation, a: Imp) -> Derivation:
    """L→ from Γ ⇒ Δ, A and B, Γ ⇒ Δ, with context alignment."""
    s1 = remove(d1.conclusion.succ, a.left)
    g2 = remove(d2.conclusion.ante, a.right)
    gamma = _union(d1.conclusion.ante, g2)
    delta = _union(s1, d2.conclusion.succ)
    d1 = weaken_to(d1, Sequent(tuple(gamma), tuple(delta) + (a.left,)))
    d2 = weaken_to(d2, Sequent((a.right,) + tuple(gamma), tuple(delta)))
    return conclude("LImp", [d1, d2], A=a)


def ror(d: Derivation, a: Or) -> Derivation:
    return conclude("ROr", [d], A=a)


def rimp(d: Derivation, a: Imp, delta=()) -> Derivation:
    return conclude("RImp", [d], A=a, delta=tuple(delta))


def lall(d: Derivation, a: All, t) -> Derivation:
    return conclude("LAll", [d], A=a, term=t)


def rall(d: Derivation, a: All, y: int) -> Derivation:
    return conclude("RAll", [d], A=a, var=y)


# ------------------------------------------------------------------ negation


def top() -> Derivation:
    """⇒ ¬⊥."""
    return conclude("ConCp", [ax("Lbot", [BOT])])


def dn_intro(a) -> Derivation:
    """A ⇒ ¬¬A."""
    return conclude("ConCp", [idax(Not(a))])


def dn_elim(a) -> Derivation:
    """¬¬A ⇒ A."""
    return conclude("ClCp", [idax(Not(a))])


def contrapose(d: Derivation) -> Derivation:
    """From Γ ⇒ Δ to ¬Δ ⇒ ¬Γ."""
    for g in d.conclusion.ante:
        d = cut(dn_elim(g), d, g)
    return conclude("ClCp", [d])


# ------------------------------------------------------------------ derived connectives


def conj_intro(a, b) -> Derivation:
    """A, B ⇒ A ∧ B."""
    na, nb = Not(a), Not(b)
    d = lor(weaken(idax(na), succ=[nb]), weaken(idax(nb), succ=[na]), Or(na, nb))
    return conclude("ConCp", [d])


def conj_elim(a, b, which: int) -> Derivation:
    """A ∧ B ⇒ A (which=0) or A ∧ B ⇒ B (which=1)."""
    na, nb = Not(a), Not(b)
    pick = na if which == 0 else nb
    d = ror(weaken(idax(pick), succ=[nb if which == 0 else na]), Or(na, nb))
    return conclude("ClCp", [d])


def rand(d1: Derivation, d2: Derivation, a, b) -> Derivation:
    """R∧: from Γ ⇒ A, Δ and Γ ⇒ B, Δ to Γ ⇒ A ∧ B, Δ."""
    d = cut(d2, cut(d1, conj_intro(a, b), a), b)
    return contract(d)


def land(d: Derivation, a, b) -> Derivation:
    """L∧: from A, B, Γ ⇒ Δ to A ∧ B, Γ ⇒ Δ."""
    d = cut(conj_elim(a, b, 0), d, a)
    d = cut(conj_elim(a, b, 1), d, b)
    return contract(d)


def rex(d: Derivation, v: int, body, t) -> Derivation:
    """R∃: from Γ ⇒ Δ, A(t) to Γ ⇒ Δ, ∃v A."""
    inst = substitute(body, v, t)
    un = All(v, Not(body))
    lem = conclude("ConCp", [lall(idax(Not(inst)), un, t)])  # A(t) ⇒ ¬∀v¬A
    return cut(d, lem, inst)


def lex(d: Derivation, v: int, body, y: int) -> Derivation:
    """L∃: from A(y), Γ ⇒ Δ to ∃v A, Γ ⇒ Δ (y the eigenvariable)."""
    inst = substitute(body, v, Var(y))
    gamma = list(remove(d.conclusion.ante, inst))
    delta = list(d.conclusion.succ)
    un = All(v, Not(body))
    c = contrapose(d)  # ¬Δ ⇒ ¬A(y), ¬Γ
    c = rall(c, un, y)  # ¬Δ ⇒ ¬Γ, ∀v¬A
    c = contrapose(c)  # ¬∀v¬A, ¬¬Γ ⇒ ¬¬Δ
    for g in gamma:
        c = cut(dn_intro(g), c, Not(Not(g)))
    for e in delta:
        c = cut(c, dn_elim(e), Not(Not(e)))
    return c


# ------------------------------------------------------------------ recapture


def recapture_neg_right(lem: Derivation, d: Derivation, a) -> Derivation:
    """From ⇒ A, ¬A and Γ, A ⇒ Δ to Γ ⇒ ¬A, Δ."""
    return cut(lem, d, a)


def recapture_neg_left(expl: Derivation, d: Derivation, a) -> Derivation:
    """From A, ¬A ⇒ and Γ ⇒ A, Δ to Γ, ¬A ⇒ Δ."""
    return cut(d, expl, a)


def recapture_imp(lem: Derivation, expl: Derivation, d: Derivation, a, b) -> Derivation:
    """From ⇒ A,¬A, A,¬A ⇒ and Γ, A ⇒ B, Δ to Γ ⇒ A → B, Δ (the displayed tree)."""
    imp = Imp(a, b)
    gamma = list(remove(d.conclusion.ante, a))
    delta = list(remove(d.conclusion.succ, b))
    # Γ ⇒ ¬A, B, Δ
    s1 = cut(weaken(lem, gamma, [b] + delta), weaken(d, [], [Not(a)]), a)
    # B ⇒ A → B
    b_imp = rimp(weaken(idax(b), [a]), imp)
    s2 = cut(weaken(s1, [], [imp]), weaken(b_imp, gamma, [Not(a)] + delta), b)
    # ¬A ⇒ A → B
    na_imp = rimp(weaken(expl, [], [b]), imp)
    return cut(s2, weaken(na_imp, gamma, delta), Not(a))


def explosion_from_lem(lem: Derivation, a) -> Derivation:
    """From ⇒ A, ¬A to A, ¬A ⇒ via contraposition."""
    c = contrapose(lem)  # ¬A, ¬¬A ⇒
    return cut(dn_intro(a), c, Not(Not(a)))


def lem_from_explosion(expl: Derivation, a) -> Derivation:
    """From A, ¬A ⇒ to ⇒ A, ¬A (ConCp then double negation)."""
    c = conclude("ConCp", [expl])  # ⇒ ¬A, ¬¬A
    return cut(c, dn_elim(a), Not(Not(a)))


def sim_of_neg(expl: Derivation, a) -> Derivation:
    """From A, ¬A ⇒ to ¬A ⇒ A → ⊥."""
    return rimp(weaken(expl, [], [BOT]), Imp(a, BOT))


def neg_of_sim(expl: Derivation, a) -> Derivation:
    """From A, ¬A ⇒ to A → ⊥ ⇒ ¬A."""
    lem = lem_from_explosion(expl, a)
    return limp(lem, weaken(ax("Lbot", [BOT]), [], [Not(a)]), Imp(a, BOT))


__all__ = [
    "ax", "idax", "weaken", "weaken_to", "cut", "contract", "lor", "limp", "ror",
    "rimp", "lall", "rall", "top", "dn_intro", "dn_elim", "contrapose", "conj_intro",
    "conj_elim", "rand", "land", "rex", "lex", "recapture_neg_right",
    "recapture_neg_left", "recapture_imp", "explosion_from_lem", "lem_from_explosion",
    "sim_of_neg", "neg_of_sim", "fresh_var", "bag",
]
