"""Abstract syntax for the arithmetical and truth-theoretic languages.

Terms and formulas are immutable, hashable trees.  Only the primitive
connectives (bottom, negation, disjunction, the HYPE conditional and the
universal quantifier) are stored; conjunction, the existential quantifier,
the biconditional and friends are helper constructors that expand into
primitives.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Union


class Lang(str, enum.Enum):
    """Language tags, ordered roughly by inclusion."""

    LN = "L_N"
    LN_IMP = "L_N->"
    LN_IMP_P = "L_N->(P)"
    LT = "L_T"
    LT_P = "L_T(P)"
    LT_IMP = "L_T->"
    LT_IMP_P = "L_T->(P)"
    LTF = "L_TF"

    @classmethod
    def parse(cls, text: str) -> "Lang":
        norm = text.strip().replace("→", "->").replace(" ", "")
        for tag in cls:
            if tag.value == norm or tag.name == norm.upper():
                return tag
        raise ValueError(f"unknown language tag {text!r}")


_ALLOWS_IMP = {Lang.LN_IMP, Lang.LN_IMP_P, Lang.LT_IMP, Lang.LT_IMP_P, Lang.LTF}
_ALLOWS_TR = {Lang.LT, Lang.LT_P, Lang.LT_IMP, Lang.LT_IMP_P, Lang.LTF}
_ALLOWS_P = {Lang.LN_IMP_P, Lang.LT_P, Lang.LT_IMP_P, Lang.LTF}


class _Node:
    """Mixin caching the structural hash; trees get hashed a lot by the kernel."""

    __slots__ = ()

    def __hash__(self) -> int:
        h = self.__dict__.get("_h")
        if h is None:
            h = hash((type(self).__name__,) + self._key())
            object.__setattr__(self, "_h", h)
        return h

    def _key(self) -> tuple:
        raise NotImplementedError


# ---------------------------------------------------------------- terms


@dataclass(frozen=True, eq=True)
class Var(_Node):
    index: int

    def _key(self):
        return (self.index,)

    __hash__ = _Node.__hash__

    def __str__(self):
        return f"v{self.index}" if self.index >= 0 else f"b{-self.index}"


@dataclass(frozen=True, eq=True)
class Num(_Node):
    """The numeral S^n(0), stored compactly."""

    value: int

    def _key(self):
        return (self.value,)

    __hash__ = _Node.__hash__

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True, eq=True)
class Succ(_Node):
    """S(t) for a term t that is not a numeral (use `succ` to build)."""

    arg: "Term"

    def _key(self):
        return (self.arg,)

    __hash__ = _Node.__hash__

    def __str__(self):
        return f"S({self.arg})"


@dataclass(frozen=True, eq=True)
class Plus(_Node):
    left: "Term"
    right: "Term"

    def _key(self):
        return (self.left, self.right)

    __hash__ = _Node.__hash__

    def __str__(self):
        return f"{_tparen(self.left)}+{_tparen(self.right)}"


@dataclass(frozen=True, eq=True)
class Times(_Node):
    left: "Term"
    right: "Term"

    def _key(self):
        return (self.left, self.right)

    __hash__ = _Node.__hash__

    def __str__(self):
        return f"{_tparen(self.left)}*{_tparen(self.right)}"


@dataclass(frozen=True, eq=True)
class Fn(_Node):
    name: str
    args: tuple

    def __post_init__(self):
        arity = FUNCTION_ARITY.get(self.name)
        if arity is None:
            raise ValueError(f"unknown function symbol {self.name!r}")
        if len(self.args) != arity:
            raise ValueError(f"{self.name} takes {arity} argument(s), got {len(self.args)}")

    def _key(self):
        return (self.name, self.args)

    __hash__ = _Node.__hash__

    def __str__(self):
        return f"{self.name}({', '.join(str(a) for a in self.args)})"


@dataclass(frozen=True, eq=True)
class Meta(_Node):
    """Term metavariable; only appears in axiom templates."""

    name: str

    def _key(self):
        return (self.name,)

    __hash__ = _Node.__hash__

    def __str__(self):
        return f"?{self.name}"


Term = Union[Var, Num, Succ, Plus, Times, Fn, Meta]


def _tparen(t: Term) -> str:
    return f"({t})" if isinstance(t, (Plus, Times)) else str(t)


# The core signature for representing syntax, followed by the auxiliary
# symbols needed by the truth axioms, the ordinal machinery and the
# translations.  See README "Function symbols".
CORE_FUNCTIONS = {
    "num": 1, "sub": 3, "negdot": 1, "vordot": 2, "alldot": 2,
    "eqdot": 2, "trdot": 1, "pair": 2, "proj1": 1, "proj2": 1,
}
AUX_FUNCTIONS = {
    "val": 1, "cterm": 1, "sent": 1, "isvar": 1, "pdot": 1, "slev": 2,
    "taudot": 1,
    "prec": 2, "oadd": 2, "opow": 1, "omul": 2, "ophi": 2, "oe": 1, "oh": 1,
    "fh": 2, "fsup": 2,
}
FUNCTION_ARITY = {**CORE_FUNCTIONS, **AUX_FUNCTIONS}

ZERO = Num(0)
ONE = Num(1)


def succ(t: Term) -> Term:
    if isinstance(t, Num):
        return Num(t.value + 1)
    return Succ(t)


def numeral(n: int) -> Num:
    if n < 0:
        raise ValueError("numerals are natural numbers")
    return Num(n)


# ---------------------------------------------------------------- formulas


@dataclass(frozen=True, eq=True)
class Bot(_Node):
    def _key(self):
        return ()

    __hash__ = _Node.__hash__


@dataclass(frozen=True, eq=True)
class Eq(_Node):
    left: Term
    right: Term

    def _key(self):
        return (self.left, self.right)

    __hash__ = _Node.__hash__


@dataclass(frozen=True, eq=True)
class Tr(_Node):
    arg: Term

    def _key(self):
        return (self.arg,)

    __hash__ = _Node.__hash__


@dataclass(frozen=True, eq=True)
class Fa(_Node):
    """The falsity predicate of the classical target language."""

    arg: Term

    def _key(self):
        return (self.arg,)

    __hash__ = _Node.__hash__


@dataclass(frozen=True, eq=True)
class Pr(_Node):
    """The schematic predicate P."""

    arg: Term

    def _key(self):
        return (self.arg,)

    __hash__ = _Node.__hash__


@dataclass(frozen=True, eq=True)
class Atom(_Node):
    """Propositional letter (a 0-ary predicate symbol)."""

    name: str

    def _key(self):
        return (self.name,)

    __hash__ = _Node.__hash__


@dataclass(frozen=True, eq=True)
class Not(_Node):
    body: "Formula"

    def _key(self):
        return (self.body,)

    __hash__ = _Node.__hash__


@dataclass(frozen=True, eq=True)
class Or(_Node):
    left: "Formula"
    right: "Formula"

    def _key(self):
        return (self.left, self.right)

    __hash__ = _Node.__hash__


@dataclass(frozen=True, eq=True)
class Imp(_Node):
    left: "Formula"
    right: "Formula"

    def _key(self):
        return (self.left, self.right)

    __hash__ = _Node.__hash__


@dataclass(frozen=True, eq=True)
class All(_Node):
    var: int
    body: "Formula"

    def _key(self):
        return (self.var, self.body)

    __hash__ = _Node.__hash__


Formula = Union[Bot, Eq, Tr, Fa, Pr, Atom, Not, Or, Imp, All]
ATOMIC = (Bot, Eq, Tr, Fa, Pr, Atom)

BOT = Bot()


def __str_formula(self) -> str:
    from .printer import show

    return show(self)


for _cls in (Bot, Eq, Tr, Fa, Pr, Atom, Not, Or, Imp, All):
    _cls.__str__ = __str_formula


# ------------------------------------------------------- defined connectives


def top() -> Formula:
    return Not(BOT)


def conj(a: Formula, b: Formula) -> Formula:
    return Not(Or(Not(a), Not(b)))


def conj_all(parts) -> Formula:
    parts = list(parts)
    if not parts:
        return top()
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = conj(p, out)
    return out


def exists(v: int, a: Formula) -> Formula:
    return Not(All(v, Not(a)))


def iff(a: Formula, b: Formula) -> Formula:
    return conj(Imp(a, b), Imp(b, a))


def sim(a: Formula) -> Formula:
    """Intuitionistic negation A -> bot."""
    return Imp(a, BOT)


def supset(a: Formula, b: Formula) -> Formula:
    """Material conditional."""
    return Or(Not(a), b)


def mequiv(a: Formula, b: Formula) -> Formula:
    return conj(supset(a, b), supset(b, a))


def neq(s: Term, t: Term) -> Formula:
    return Not(Eq(s, t))


def prec(s: Term, t: Term) -> Formula:
    """The ordinal ordering atom s < t, i.e. prec(s,t) = 1."""
    return Eq(Fn("prec", (s, t)), ONE)


def preceq(s: Term, t: Term) -> Formula:
    return Or(prec(s, t), Eq(s, t))


def bounded_all(v: int, bound: Term, body: Formula) -> Formula:
    """forall v < bound. body"""
    return All(v, Imp(prec(Var(v), bound), body))


def bounded_exists(v: int, bound: Term, body: Formula) -> Formula:
    return exists(v, conj(prec(Var(v), bound), body))


def as_conj(f: Formula):
    """Return (a, b) if f is a defined conjunction, else None."""
    if isinstance(f, Not) and isinstance(f.body, Or):
        l, r = f.body.left, f.body.right
        if isinstance(l, Not) and isinstance(r, Not):
            return l.body, r.body
    return None


def as_prec(f: Formula):
    if isinstance(f, Eq) and f.right == ONE and isinstance(f.left, Fn) and f.left.name == "prec":
        return f.left.args
    return None


# ------------------------------------------------------------ traversal


def term_children(t: Term) -> tuple:
    if isinstance(t, Succ):
        return (t.arg,)
    if isinstance(t, (Plus, Times)):
        return (t.left, t.right)
    if isinstance(t, Fn):
        return t.args
    return ()


def formula_children(f: Formula) -> tuple:
    if isinstance(f, Not):
        return (f.body,)
    if isinstance(f, (Or, Imp)):
        return (f.left, f.right)
    if isinstance(f, All):
        return (f.body,)
    return ()


def formula_terms(f: Formula) -> tuple:
    if isinstance(f, Eq):
        return (f.left, f.right)
    if isinstance(f, (Tr, Fa, Pr)):
        return (f.arg,)
    return ()


def term_vars(t: Term) -> frozenset:
    fv = t.__dict__.get("_fv")
    if fv is None:
        if isinstance(t, Var):
            fv = frozenset((t.index,))
        else:
            fv = frozenset().union(*(term_vars(c) for c in term_children(t)))
        object.__setattr__(t, "_fv", fv)
    return fv


def free_vars(f: Formula) -> frozenset:
    fv = f.__dict__.get("_fv")
    if fv is None:
        if isinstance(f, All):
            fv = free_vars(f.body) - {f.var}
        elif isinstance(f, ATOMIC):
            fv = frozenset().union(*(term_vars(t) for t in formula_terms(f)))
        else:
            fv = frozenset().union(*(free_vars(c) for c in formula_children(f)))
        object.__setattr__(f, "_fv", fv)
    return fv


def all_vars(f: Formula) -> frozenset:
    """Free and bound variable indices."""
    if isinstance(f, All):
        return all_vars(f.body) | {f.var}
    if isinstance(f, ATOMIC):
        return frozenset().union(*(term_vars(t) for t in formula_terms(f)))
    return frozenset().union(*(all_vars(c) for c in formula_children(f)))


def fresh_var(*avoid) -> int:
    used = set()
    for a in avoid:
        if isinstance(a, int):
            used.add(a)
        elif isinstance(a, (set, frozenset)):
            used |= a
        elif isinstance(a, _Node) and isinstance(a, (Bot, Eq, Tr, Fa, Pr, Atom, Not, Or, Imp, All)):
            used |= all_vars(a)
        else:
            used |= term_vars(a)
    return max(used, default=-1) + 1


def is_closed(x) -> bool:
    if isinstance(x, (Bot, Eq, Tr, Fa, Pr, Atom, Not, Or, Imp, All)):
        return not free_vars(x)
    return not term_vars(x)


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    for c in formula_children(f):
        yield from subformulas(c)


def rank(f: Formula) -> int:
    """Number of nodes on the longest branch of the syntax tree."""
    kids = formula_children(f)
    return 1 + max((rank(c) for c in kids), default=0)


def size(f: Formula) -> int:
    return 1 + sum(size(c) for c in formula_children(f))


# ------------------------------------------------------------ substitution


def subst_term(t: Term, v: int, s: Term) -> Term:
    if v not in term_vars(t):
        return t
    if isinstance(t, Var):
        return s
    if isinstance(t, Succ):
        return succ(subst_term(t.arg, v, s))
    if isinstance(t, Plus):
        return Plus(subst_term(t.left, v, s), subst_term(t.right, v, s))
    if isinstance(t, Times):
        return Times(subst_term(t.left, v, s), subst_term(t.right, v, s))
    if isinstance(t, Fn):
        return Fn(t.name, tuple(subst_term(a, v, s) for a in t.args))
    return t


def substitute(a: Formula, v: int, t: Term) -> Formula:
    """Capture-avoiding substitution of t for the free variable v in a."""
    if v not in free_vars(a):
        return a
    if isinstance(a, Eq):
        return Eq(subst_term(a.left, v, t), subst_term(a.right, v, t))
    if isinstance(a, Tr):
        return Tr(subst_term(a.arg, v, t))
    if isinstance(a, Fa):
        return Fa(subst_term(a.arg, v, t))
    if isinstance(a, Pr):
        return Pr(subst_term(a.arg, v, t))
    if isinstance(a, Not):
        return Not(substitute(a.body, v, t))
    if isinstance(a, Or):
        return Or(substitute(a.left, v, t), substitute(a.right, v, t))
    if isinstance(a, Imp):
        return Imp(substitute(a.left, v, t), substitute(a.right, v, t))
    if isinstance(a, All):
        if a.var in term_vars(t):
            w = fresh_var(a.body, t, v)
            body = substitute(a.body, a.var, Var(w))
            return All(w, substitute(body, v, t))
        return All(a.var, substitute(a.body, v, t))
    return a


def subst_pred(a: Formula, var: int, body: Formula) -> Formula:
    """Replace every atom P(t) in a by body[t/var]; bound variables of a are
    renamed when they would capture free variables of body."""
    if isinstance(a, Pr):
        return substitute(body, var, a.arg)
    if isinstance(a, ATOMIC):
        return a
    if isinstance(a, Not):
        return Not(subst_pred(a.body, var, body))
    if isinstance(a, Or):
        return Or(subst_pred(a.left, var, body), subst_pred(a.right, var, body))
    if isinstance(a, Imp):
        return Imp(subst_pred(a.left, var, body), subst_pred(a.right, var, body))
    if isinstance(a, All):
        danger = free_vars(body) - {var}
        if a.var in danger:
            w = fresh_var(a.body, body, var)
            return All(w, subst_pred(substitute(a.body, a.var, Var(w)), var, body))
        return All(a.var, subst_pred(a.body, var, body))
    return a


def mentions_pred(a: Formula, kind) -> bool:
    return any(isinstance(s, kind) for s in subformulas(a))


# ------------------------------------------------------------ alpha equivalence


def alpha_key(f: Formula) -> Formula:
    """Canonical representative of the alpha-equivalence class of f.

    Bound variables are renamed to negative indices by binding depth, which
    can never clash with free variables.
    """
    key = f.__dict__.get("_ak")
    if key is None:
        key = _alpha(f, {}, 0)
        object.__setattr__(f, "_ak", key)
    return key


def _alpha_term(t: Term, env: dict) -> Term:
    if not env or not (term_vars(t) & env.keys()):
        return t
    if isinstance(t, Var):
        return Var(env[t.index])
    if isinstance(t, Succ):
        return succ(_alpha_term(t.arg, env))
    if isinstance(t, Plus):
        return Plus(_alpha_term(t.left, env), _alpha_term(t.right, env))
    if isinstance(t, Times):
        return Times(_alpha_term(t.left, env), _alpha_term(t.right, env))
    if isinstance(t, Fn):
        return Fn(t.name, tuple(_alpha_term(a, env) for a in t.args))
    return t


def _alpha(f: Formula, env: dict, depth: int) -> Formula:
    if not env and not _has_binder(f):
        return f
    if isinstance(f, Eq):
        return Eq(_alpha_term(f.left, env), _alpha_term(f.right, env))
    if isinstance(f, Tr):
        return Tr(_alpha_term(f.arg, env))
    if isinstance(f, Fa):
        return Fa(_alpha_term(f.arg, env))
    if isinstance(f, Pr):
        return Pr(_alpha_term(f.arg, env))
    if isinstance(f, Not):
        return Not(_alpha(f.body, env, depth))
    if isinstance(f, Or):
        return Or(_alpha(f.left, env, depth), _alpha(f.right, env, depth))
    if isinstance(f, Imp):
        return Imp(_alpha(f.left, env, depth), _alpha(f.right, env, depth))
    if isinstance(f, All):
        inner = dict(env)
        inner[f.var] = -(depth + 1)
        return All(-(depth + 1), _alpha(f.body, inner, depth + 1))
    return f


def _has_binder(f: Formula) -> bool:
    hb = f.__dict__.get("_hb")
    if hb is None:
        hb = isinstance(f, All) or any(_has_binder(c) for c in formula_children(f))
        object.__setattr__(f, "_hb", hb)
    return hb


def alpha_eq(a: Formula, b: Formula) -> bool:
    return a is b or alpha_key(a) == alpha_key(b)


# ------------------------------------------------------------ languages


def language_violations(f: Formula, lang: Lang) -> list[str]:
    problems = []
    for s in subformulas(f):
        if isinstance(s, Imp) and lang not in _ALLOWS_IMP:
            problems.append(f"conditional not allowed in {lang.value}")
        elif isinstance(s, Tr) and lang not in _ALLOWS_TR:
            problems.append(f"Tr not allowed in {lang.value}")
        elif isinstance(s, Fa) and lang is not Lang.LTF:
            problems.append(f"F not allowed in {lang.value}")
        elif isinstance(s, Pr) and lang not in _ALLOWS_P:
            problems.append(f"P not allowed in {lang.value}")
    return problems


def in_language(f: Formula, lang: Lang) -> bool:
    return not language_violations(f, lang)


@dataclass(frozen=True)
class Abstraction:
    """A formula with one distinguished free variable, i.e. a predicate A(x)."""

    var: int
    body: Formula
    extra: dict = field(default_factory=dict, compare=False, hash=False)

    def __call__(self, t: Term) -> Formula:
        return substitute(self.body, self.var, t)

    def __hash__(self):
        return hash((self.var, self.body))

    def params(self) -> frozenset:
        return free_vars(self.body) - {self.var}
