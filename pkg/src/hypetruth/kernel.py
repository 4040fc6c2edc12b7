"""Trusted checker for G1h_cd derivations and its arithmetical and truth
extensions.

Every internal node names its rule and carries the parameters the rule needs
(principal formula, cut formula, eigenvariable, witness term, ...).  The
kernel recomputes the conclusion from the premises with `apply_rule` and
compares it with the stated conclusion as multisets up to renaming of bound
variables.  Leaves are axiom instances (`axiom`, with a schema id) or,
when the caller declares them, hypotheses (`hyp`).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .printer import show, show_sequent
from .syntax import (
    All, Abstraction, Imp, Lang, Not, Or, Var, ZERO, alpha_key, free_vars,
    in_language, language_violations, prec, substitute, succ, subst_pred,
)


class RuleError(ValueError):
    """A rule was applied to premises of the wrong shape."""


# ------------------------------------------------------------------ sequents


@dataclass(frozen=True, eq=False)
class Sequent:
    ante: tuple
    succ: tuple

    @staticmethod
    def of(ante: Iterable = (), succ: Iterable = ()) -> "Sequent":
        return Sequent(tuple(ante), tuple(succ))

    def _bags(self):
        b = self.__dict__.get("_b")
        if b is None:
            b = (Counter(alpha_key(f) for f in self.ante), Counter(alpha_key(f) for f in self.succ))
            object.__setattr__(self, "_b", b)
        return b

    def __eq__(self, other) -> bool:
        return isinstance(other, Sequent) and self._bags() == other._bags()

    def __hash__(self) -> int:
        a, s = self._bags()
        return hash((frozenset(a.items()), frozenset(s.items())))

    def free_vars(self) -> frozenset:
        return frozenset().union(*(free_vars(f) for f in self.ante + self.succ))

    def formulas(self) -> tuple:
        return self.ante + self.succ

    def canonical(self) -> "Sequent":
        """Both sides sorted by printed form; used for stable output."""
        return Sequent(tuple(sorted(self.ante, key=show)), tuple(sorted(self.succ, key=show)))

    def __str__(self) -> str:
        return show_sequent(self.ante, self.succ)


def _find(side: tuple, f) -> int:
    k = alpha_key(f)
    for i, g in enumerate(side):
        if g is f or alpha_key(g) == k:
            return i
    return -1


def remove(side: tuple, f, what: str = "formula") -> tuple:
    i = _find(side, f)
    if i < 0:
        raise RuleError(f"{what} {show(f)} not present")
    return side[:i] + side[i + 1:]


def bag(side: Iterable) -> Counter:
    return Counter(alpha_key(f) for f in side)


# ------------------------------------------------------------------ theories

BASE_RULES = frozenset(
    {"Cut", "LW", "RW", "LC", "RC", "LOr", "ROr", "LImp", "RImp", "ConCp", "ClCp", "LAll", "RAll"}
)

RULE_ALIASES = {
    "L∨": "LOr", "R∨": "ROr", "L→": "LImp", "R→": "RImp", "L∀": "LAll", "R∀": "RAll",
    "IND^R": "IND", "INDR": "IND", "TI^r": "TI", "TIr": "TI",
}


@dataclass(frozen=True)
class Theory:
    name: str
    lang: Lang | None
    schemas: frozenset
    rules: frozenset

    def allows_schema(self, schema: str) -> bool:
        if schema.startswith("ord-lemma:"):
            return "ord-lemma" in self.schemas
        return schema in self.schemas


_G1H = frozenset({"ID", "Lbot"})
_EQ = _G1H | {"Ref", "Rep"}
_HYA = _EQ | {"Q1", "Q2", "Q4", "Q5", "Q6", "Q7", "hya-eval", "IND->", "ord-lemma"}
_KFL = _HYA | {"KFL1", "KFL2", "KFL3", "KFL4", "KFL5", "KFL6"}
_KFLS = _KFL | {"KFL-P", "P-class"}

THEORIES = {
    "G1h": Theory("G1h", None, _G1H, BASE_RULES),
    "G1h=": Theory("G1h=", None, _EQ, BASE_RULES),
    # HYA over an expansion of the arithmetical language by further predicates
    "HYA": Theory("HYA", Lang.LT_IMP_P, _HYA, BASE_RULES | {"IND"}),
    "KFL": Theory("KFL", Lang.LT_IMP, _KFL, BASE_RULES | {"IND"}),
    "KFL*": Theory("KFL*", Lang.LT_IMP_P, _KFLS, BASE_RULES | {"IND", "Subst"}),
}


def theory(name: str | Theory) -> Theory:
    """Look up a theory; a `+TI` suffix enables the transfinite induction rule."""
    if isinstance(name, Theory):
        return name
    base, _, extra = name.partition("+")
    if base not in THEORIES:
        raise KeyError(f"unknown theory {name!r}")
    t = THEORIES[base]
    if extra == "TI":
        return Theory(name, t.lang, t.schemas, t.rules | {"TI"})
    if extra:
        raise KeyError(f"unknown theory extension {extra!r}")
    return t


# ------------------------------------------------------------------ derivations


@dataclass(eq=False)
class Derivation:
    conclusion: Sequent
    rule: str
    premises: tuple = ()
    params: dict = field(default_factory=dict)

    def height(self) -> int:
        return _measure(self)[0]

    def size(self) -> int:
        """Number of distinct nodes."""
        return _measure(self)[1]

    def __repr__(self) -> str:
        return f"Derivation({self.rule}: {self.conclusion})"


def _walk(d: Derivation):
    """Distinct nodes in post-order (premises before conclusions)."""
    seen = set()
    order = []
    stack = [(d, False)]
    while stack:
        node, done = stack.pop()
        if done:
            order.append(node)
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for p in reversed(node.premises):
            if id(p) not in seen:
                stack.append((p, False))
    return order


def _measure(d: Derivation):
    h = {}
    order = _walk(d)
    for node in order:
        h[id(node)] = 1 + max((h[id(p)] for p in node.premises), default=-1)
    return h[id(d)], len(order)


# ------------------------------------------------------------------ rules


def _principal(params, cls=None):
    a = params.get("A")
    if a is None:
        raise RuleError("missing principal formula parameter A")
    if cls is not None and not isinstance(a, cls):
        raise RuleError(f"principal formula {show(a)} is not a {cls.__name__}")
    return a


def _arity(premises, n, rule):
    if len(premises) != n:
        raise RuleError(f"{rule} takes {n} premise(s), got {len(premises)}")


def _same(s1: Sequent, s2: Sequent, what: str):
    if s1 != s2:
        raise RuleError(f"{what}: contexts differ ({s1} vs {s2})")


def _ordinal_term(alpha):
    from .ordcodes import ord_term
    from .ordinals import Ord

    return ord_term(alpha) if isinstance(alpha, Ord) else alpha


def bounded(v: int, bound, body) -> All:
    return All(v, Imp(prec(Var(v), bound), body))


def below(B: Abstraction, bound, avoid=()) -> All:
    """forall z < bound. B(z) with a fresh z."""
    from .syntax import fresh_var

    z = fresh_var(B.body, B.var, bound, *avoid)
    return bounded(z, bound, B(Var(z)))


def apply_rule(rule: str, params: dict, premises: list[Sequent]) -> Sequent:
    """Forward application: the unique conclusion of `rule` on `premises`."""
    rule = RULE_ALIASES.get(rule, rule)
    fn = _RULES.get(rule)
    if fn is None:
        raise RuleError(f"unknown rule {rule!r}")
    return fn(params, list(premises))


def _cut(params, ps):
    _arity(ps, 2, "Cut")
    a = _principal(params)
    left = Sequent(ps[0].ante, remove(ps[0].succ, a, "cut formula"))
    right = Sequent(remove(ps[1].ante, a, "cut formula"), ps[1].succ)
    _same(left, right, "Cut")
    return left


def _lw(params, ps):
    _arity(ps, 1, "LW")
    return Sequent((_principal(params),) + ps[0].ante, ps[0].succ)


def _rw(params, ps):
    _arity(ps, 1, "RW")
    return Sequent(ps[0].ante, ps[0].succ + (_principal(params),))


def _lc(params, ps):
    _arity(ps, 1, "LC")
    a = _principal(params)
    rest = remove(ps[0].ante, a)
    remove(rest, a, "second copy of")
    return Sequent(rest, ps[0].succ)


def _rc(params, ps):
    _arity(ps, 1, "RC")
    a = _principal(params)
    rest = remove(ps[0].succ, a)
    remove(rest, a, "second copy of")
    return Sequent(ps[0].ante, rest)


def _lor(params, ps):
    _arity(ps, 2, "L∨")
    a = _principal(params, Or)
    c1 = Sequent(remove(ps[0].ante, a.left, "left disjunct"), ps[0].succ)
    c2 = Sequent(remove(ps[1].ante, a.right, "right disjunct"), ps[1].succ)
    _same(c1, c2, "L∨")
    return Sequent((a,) + c1.ante, c1.succ)


def _ror(params, ps):
    _arity(ps, 1, "R∨")
    a = _principal(params, Or)
    rest = remove(remove(ps[0].succ, a.left, "left disjunct"), a.right, "right disjunct")
    return Sequent(ps[0].ante, (a,) + rest)


def _limp(params, ps):
    _arity(ps, 2, "L→")
    a = _principal(params, Imp)
    c1 = Sequent(ps[0].ante, remove(ps[0].succ, a.left, "antecedent"))
    c2 = Sequent(remove(ps[1].ante, a.right, "consequent"), ps[1].succ)
    _same(c1, c2, "L→")
    return Sequent((a,) + c1.ante, c1.succ)


def _rimp(params, ps):
    _arity(ps, 1, "R→")
    a = _principal(params, Imp)
    p = ps[0]
    if len(p.succ) != 1:
        raise RuleError("R→ premise must have exactly one succedent formula")
    if alpha_key(p.succ[0]) != alpha_key(a.right):
        raise RuleError(f"R→ premise succedent is not {show(a.right)}")
    gamma = remove(p.ante, a.left, "antecedent")
    return Sequent(gamma, (a,) + tuple(params.get("delta", ())))


def _concp(params, ps):
    _arity(ps, 1, "ConCp")
    p = ps[0]
    if not all(isinstance(f, Not) for f in p.succ):
        raise RuleError("ConCp premise succedent must consist of negations")
    return Sequent(tuple(f.body for f in p.succ), tuple(Not(g) for g in p.ante))


def _clcp(params, ps):
    _arity(ps, 1, "ClCp")
    p = ps[0]
    if not all(isinstance(f, Not) for f in p.ante):
        raise RuleError("ClCp premise antecedent must consist of negations")
    return Sequent(tuple(Not(d) for d in p.succ), tuple(f.body for f in p.ante))


def _lall(params, ps):
    _arity(ps, 1, "L∀")
    a = _principal(params, All)
    t = params.get("term")
    if t is None:
        raise RuleError("L∀ needs a witness term")
    inst = substitute(a.body, a.var, t)
    return Sequent((a,) + remove(ps[0].ante, inst, "instance"), ps[0].succ)


def _rall(params, ps):
    _arity(ps, 1, "R∀")
    a = _principal(params, All)
    y = params.get("var")
    if y is None:
        raise RuleError("R∀ needs an eigenvariable")
    inst = substitute(a.body, a.var, Var(y))
    rest = remove(ps[0].succ, inst, "instance")
    concl = Sequent(ps[0].ante, rest + (a,))
    if y in concl.free_vars():
        raise RuleError(f"eigenvariable v{y} occurs free in the conclusion")
    return concl


def _ind(params, ps):
    _arity(ps, 1, "IND^R")
    B = params.get("B")
    x = params.get("var")
    t = params.get("term")
    if not isinstance(B, Abstraction) or x is None or t is None:
        raise RuleError("IND^R needs B, var and term")
    p = ps[0]
    gamma = remove(p.ante, B(Var(x)), "induction hypothesis")
    delta = remove(p.succ, B(succ(Var(x))), "induction step")
    if x in Sequent(gamma, delta).free_vars() or x in B.params():
        raise RuleError(f"induction variable v{x} occurs free in the context")
    return Sequent((B(ZERO),) + gamma, (B(t),) + delta)


def _ti(params, ps):
    _arity(ps, 1, "TI^r")
    B = params.get("B")
    eta = params.get("var")
    alpha = params.get("alpha")
    if not isinstance(B, Abstraction) or eta is None or alpha is None:
        raise RuleError("TI^r needs B, var and alpha")
    p = ps[0]
    if len(p.succ) != 1 or alpha_key(p.succ[0]) != alpha_key(B(Var(eta))):
        raise RuleError("TI^r premise must have the single succedent B(eta)")
    gamma = remove(p.ante, below(B, Var(eta)), "hypothesis")
    if eta in Sequent(gamma, ()).free_vars() or eta in B.params():
        raise RuleError(f"eigenvariable v{eta} occurs free in the context")
    return Sequent(gamma, (below(B, _ordinal_term(alpha)),) + tuple(params.get("delta", ())))


def _subst(params, ps):
    _arity(ps, 2, "Subst")
    B = params.get("B")
    if not isinstance(B, Abstraction):
        raise RuleError("Subst needs the substituted abstraction B")
    if not in_language(B.body, Lang.LT_IMP_P):
        raise RuleError("Subst: B is not in L_T->(P)")
    lem = ps[0]
    if lem.ante or len(lem.succ) != 1:
        raise RuleError("Subst: first premise must be => all x (B(x) | !B(x))")
    f = lem.succ[0]
    ok = isinstance(f, All) and isinstance(f.body, Or) and alpha_key(f) == alpha_key(
        All(f.var, Or(B(Var(f.var)), Not(B(Var(f.var)))))
    )
    if not ok:
        raise RuleError(f"Subst: first premise is not the classicality of B: {show(f)}")
    main = ps[1]
    for g in main.formulas():
        bad = language_violations(g, Lang.LN_IMP_P)
        if bad:
            raise RuleError(f"Subst side condition: {show(g)} not in L_N->(P) ({bad[0]})")
    return Sequent(
        tuple(subst_pred(g, B.var, B.body) for g in main.ante),
        tuple(subst_pred(g, B.var, B.body) for g in main.succ),
    )


_RULES = {
    "Cut": _cut, "LW": _lw, "RW": _rw, "LC": _lc, "RC": _rc, "LOr": _lor,
    "ROr": _ror, "LImp": _limp, "RImp": _rimp, "ConCp": _concp, "ClCp": _clcp,
    "LAll": _lall, "RAll": _rall, "IND": _ind, "TI": _ti, "Subst": _subst,
}
RULES = tuple(_RULES)


# ------------------------------------------------------------------ checking


@dataclass
class Failure:
    rule: str
    message: str
    expected: Sequent | None = None
    found: Sequent | None = None

    def __str__(self) -> str:
        out = f"[{self.rule}] {self.message}"
        if self.expected is not None:
            out += f"\n  expected: {self.expected}\n  found:    {self.found}"
        return out


@dataclass
class CheckReport:
    ok: bool
    height: int
    nodes: int
    failure: Failure | None = None
    schemas: Counter = field(default_factory=Counter)
    hypotheses: list = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [f"status: {'accepted' if self.ok else 'rejected'}",
               f"height: {self.height}", f"nodes: {self.nodes}"]
        for k in sorted(self.schemas):
            out.append(f"axiom {k}: {self.schemas[k]}")
        for h in self.hypotheses:
            out.append(f"hypothesis: {h}")
        if self.failure:
            out.append(f"failure: {self.failure}")
        return out


def _lang_ok(f, lang: Lang | None) -> str | None:
    if lang is None:
        return None
    cache = f.__dict__.get("_lang")
    if cache is None:
        cache = {}
        object.__setattr__(f, "_lang", cache)
    if lang not in cache:
        bad = language_violations(f, lang)
        cache[lang] = bad[0] if bad else ""
    return cache[lang] or None


def check_node(node: Derivation, thy: Theory, hypotheses=()) -> Failure | None:
    from .axioms import is_axiom

    for f in node.conclusion.formulas():
        bad = _lang_ok(f, thy.lang)
        if bad:
            return Failure(node.rule, f"{show(f)}: {bad}")
    if node.rule == "axiom":
        schema = node.params.get("schema", "")
        if node.premises:
            return Failure("axiom", "axiom leaves take no premises")
        if not thy.allows_schema(schema):
            return Failure(f"axiom:{schema}", f"schema not available in {thy.name}")
        if not is_axiom(node.conclusion, schema):
            return Failure(f"axiom:{schema}", f"not an instance: {node.conclusion}")
        return None
    if node.rule == "hyp":
        if node.conclusion not in list(hypotheses):
            return Failure("hyp", f"undeclared hypothesis {node.conclusion}")
        return None
    rule = RULE_ALIASES.get(node.rule, node.rule)
    if rule not in thy.rules:
        return Failure(node.rule, f"rule not available in {thy.name}")
    try:
        expected = apply_rule(rule, node.params, [p.conclusion for p in node.premises])
    except RuleError as exc:
        return Failure(node.rule, str(exc),
                       None, None) if not node.premises else Failure(
            node.rule, f"{exc}; premises: " + " | ".join(str(p.conclusion) for p in node.premises))
    if expected != node.conclusion:
        return Failure(node.rule, "conclusion does not match", expected, node.conclusion)
    return None


def check(d: Derivation, thy: str | Theory = "KFL*", hypotheses: Iterable[Sequent] = ()) -> CheckReport:
    """Check every node of d; report the first failure in post-order."""
    thy = theory(thy)
    hyps = list(hypotheses)
    order = _walk(d)
    schemas: Counter = Counter()
    used = []
    heights = {}
    failure = None
    for node in order:
        heights[id(node)] = 1 + max((heights[id(p)] for p in node.premises), default=-1)
        if failure is not None:
            continue
        failure = check_node(node, thy, hyps)
        if failure is None:
            if node.rule == "axiom":
                schemas[node.params["schema"]] += 1
            elif node.rule == "hyp" and str(node.conclusion) not in used:
                used.append(str(node.conclusion))
    return CheckReport(failure is None, heights[id(d)], len(order), failure, schemas, used)


def conclude(rule: str, premises: list[Derivation], **params) -> Derivation:
    """Build a checked-forward node: the conclusion is computed by apply_rule."""
    rule = RULE_ALIASES.get(rule, rule)
    concl = apply_rule(rule, params, [p.conclusion for p in premises])
    return Derivation(concl, rule, tuple(premises), params)


def axiom(schema: str, ante=(), succ=()) -> Derivation:
    return Derivation(Sequent.of(ante, succ), "axiom", (), {"schema": schema})


def hyp(ante=(), succ=()) -> Derivation:
    return Derivation(Sequent.of(ante, succ), "hyp", (), {})


__all__ = [
    "Sequent", "Derivation", "Theory", "THEORIES", "theory", "apply_rule", "check",
    "CheckReport", "Failure", "RuleError", "conclude", "axiom", "hyp", "bounded",
    "below", "RULES",
]
