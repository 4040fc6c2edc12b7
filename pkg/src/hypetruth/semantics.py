"""Routley-frame models: forcing, validity and bounded countermodel search.

A formula is evaluated to its extension, the set of states forcing it;
`force` is membership in that set.  Negation looks at the starred state,
the conditional at all ≤-successors, and ⊥ is never forced.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .syntax import (
    Atom, All, Bot, Eq, Fa, Fn, Imp, Not, Num, Or, Pr, Tr, Var, conj, subformulas, substitute,
)


class UninterpretedError(ValueError):
    pass


class Inconclusive(ValueError):
    """The search bounds are too small for the input."""


class OutOfScope(ValueError):
    """A truth ascription names a sentence outside the model's universe."""


# ------------------------------------------------------------------ frames


@dataclass(frozen=True)
class Frame:
    n: int
    le: frozenset  # pairs (w, v) with w ≤ v
    star: tuple

    def succs(self, w: int) -> tuple:
        return tuple(v for v in range(self.n) if (w, v) in self.le)

    def violations(self) -> list[str]:
        out = []
        for w in range(self.n):
            if (w, w) not in self.le:
                out.append(f"≤ not reflexive at {w}")
            if self.star[self.star[w]] != w:
                out.append(f"* not involutive at {w}")
        for (a, b) in self.le:
            for (c, d) in self.le:
                if b == c and (a, d) not in self.le:
                    out.append(f"≤ not transitive at {a},{b},{d}")
            if (self.star[b], self.star[a]) not in self.le:
                out.append(f"* not antimonotone at {a} ≤ {b}")
        return out


def _preorders(n: int):
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    diag = {(i, i) for i in range(n)}
    for bits in range(1 << len(off)):
        le = diag | {p for k, p in enumerate(off) if bits >> k & 1}
        if all((a, d) in le for (a, b) in le for (c, d) in le if b == c):
            yield frozenset(le)


def _involutions(n: int):
    for perm in itertools.permutations(range(n)):
        if all(perm[perm[i]] == i for i in range(n)):
            yield perm


def _canon(n: int, le, star) -> tuple:
    best = None
    for pi in itertools.permutations(range(n)):
        inv = [0] * n
        for i, p in enumerate(pi):
            inv[p] = i
        key = (tuple(sorted((pi[a], pi[b]) for a, b in le)),
               tuple(pi[star[inv[k]]] for k in range(n)))
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def frames(n: int) -> tuple:
    """All Routley frames on n states, one per isomorphism class."""
    seen = {}
    for le in _preorders(n):
        for star in _involutions(n):
            if all((star[b], star[a]) in le for a, b in le):
                key = _canon(n, le, star)
                if key not in seen:
                    seen[key] = Frame(n, frozenset(key[0]), key[1])
    return tuple(seen[k] for k in sorted(seen))


@lru_cache(maxsize=None)
def upsets(fr: Frame) -> tuple:
    out = []
    for bits in range(1 << fr.n):
        s = frozenset(w for w in range(fr.n) if bits >> w & 1)
        if all(v in s for (w, v) in fr.le if w in s):
            out.append(s)
    return tuple(out)


# ------------------------------------------------------------------ models


@dataclass
class Model:
    frame: Frame
    atoms: dict = field(default_factory=dict)  # name -> set of states
    preds: dict = field(default_factory=dict)  # 'Tr' / 'P' / 'F' -> tuple of per-state sets
    domain: tuple = ()
    # optional: a universe object bounding which sentence codes Tr may name,
    # and the range of quantifiers guarded by cterm(v)=1
    scope: object = None
    term_domain: tuple | None = None

    def hereditary_violations(self) -> list[str]:
        out = []
        for name, ext in list(self.atoms.items()) + list(self.preds.items()):
            for (w, v) in self.frame.le:
                inside = (w in ext and v not in ext) if isinstance(ext, frozenset | set) \
                    else not set(ext[w]) <= set(ext[v])
                if inside:
                    out.append(f"{name} not hereditary from {w} to {v}")
        return out

    def describe(self) -> list[str]:
        fr = self.frame
        lines = [f"states: {fr.n}",
                 "le: " + " ".join(f"{a}<={b}" for a, b in sorted(fr.le) if a != b),
                 "star: " + " ".join(f"{w}*={fr.star[w]}" for w in range(fr.n))]
        for name in sorted(self.atoms):
            lines.append(f"{name}: {sorted(self.atoms[name])}")
        return lines


_PRED = {Tr: "Tr", Pr: "P", Fa: "F"}


def _value(t) -> int:
    from .coding import value

    return value(t)


def _sentence(c: int) -> bool:
    from .coding import sent

    return sent(c)


def _term_guarded(a: All) -> bool:
    """Whether a has the shape ∀v (cterm(v)=1 → ...)."""
    b = a.body
    if not isinstance(b, Imp) or not isinstance(b.left, Eq):
        return False
    g = b.left
    return (isinstance(g.left, Fn) and g.left.name == "cterm" and g.left.args == (Var(a.var),)
            and g.right == Num(1))


def extension(m: Model, a, cache: dict | None = None) -> frozenset:
    """The set of states forcing the sentence a."""
    if cache is None:
        cache = {}
    hit = cache.get(a)
    if hit is not None:
        return hit
    fr = m.frame
    states = range(fr.n)
    if isinstance(a, Bot):
        out = frozenset()
    elif isinstance(a, Atom):
        if a.name not in m.atoms:
            raise UninterpretedError(f"atom {a.name} is not interpreted")
        out = frozenset(m.atoms[a.name])
    elif isinstance(a, Eq):
        out = frozenset(states) if _value(a.left) == _value(a.right) else frozenset()
    elif type(a) in _PRED:
        name = _PRED[type(a)]
        if name not in m.preds:
            raise UninterpretedError(f"predicate {name} is not interpreted")
        x = _value(a.arg)
        if m.scope is not None and name == "Tr" and x not in m.scope.codes \
                and _sentence(x):
            raise OutOfScope(f"sentence code {x} is outside the universe")
        out = frozenset(w for w in states if x in m.preds[name][w])
    elif isinstance(a, Not):
        e = extension(m, a.body, cache)
        out = frozenset(w for w in states if fr.star[w] not in e)
    elif isinstance(a, Or):
        out = extension(m, a.left, cache) | extension(m, a.right, cache)
    elif isinstance(a, Imp):
        l, r = extension(m, a.left, cache), extension(m, a.right, cache)
        out = frozenset(w for w in states if all(v in r for v in fr.succs(w) if v in l))
    elif isinstance(a, All):
        if not m.domain:
            raise UninterpretedError("quantifier over an empty domain")
        out = frozenset(states)
        dom = m.domain
        if m.term_domain is not None and _term_guarded(a):
            dom = m.term_domain
        for d in dom:
            out &= extension(m, substitute(a.body, a.var, Num(d)), cache)
            if not out:
                break
    else:
        raise UninterpretedError(f"cannot evaluate {a!r}")
    cache[a] = out
    return out


def force(m: Model, w: int, a, cache: dict | None = None) -> bool:
    return w in extension(m, a, cache)


def holds_at(m: Model, w: int, ante, succ, cache: dict | None = None) -> bool:
    cache = {} if cache is None else cache
    if all(force(m, w, g, cache) for g in ante):
        return any(force(m, w, d, cache) for d in succ)
    return True


def valid(m: Model, seq) -> bool:
    cache: dict = {}
    return all(holds_at(m, w, seq.ante, seq.succ, cache) for w in range(m.frame.n))


# ------------------------------------------------------------------ search


def atoms_of(seq) -> list[str]:
    names = set()
    for f in seq.formulas():
        for g in subformulas(f):
            if isinstance(g, Atom):
                names.add(g.name)
            elif isinstance(g, (Eq, Tr, Pr, Fa, All)):
                raise ValueError("countermodel search is propositional")
    return sorted(names)


def models(max_states: int, names) -> "itertools.chain":
    """All models with at most max_states states interpreting the given atoms."""
    names = list(names)
    for n in range(1, max_states + 1):
        for fr in frames(n):
            ups = upsets(fr)
            for choice in itertools.product(ups, repeat=len(names)):
                yield Model(fr, dict(zip(names, choice)))


@dataclass
class Countermodel:
    model: Model
    state: int

    def describe(self) -> list[str]:
        return self.model.describe() + [f"refuting state: {self.state}"]


def countermodel(seq, max_states: int = 3, max_atoms: int = 2) -> Countermodel | None:
    names = atoms_of(seq)
    if len(names) > max_atoms:
        raise Inconclusive(f"{len(names)} atoms exceed the bound {max_atoms}")
    for m in models(max_states, names):
        cache: dict = {}
        for w in range(m.frame.n):
            if not holds_at(m, w, seq.ante, seq.succ, cache):
                return Countermodel(m, w)
    return None


def valid_all(seq, max_states: int = 3, names=None) -> bool:
    names = atoms_of(seq) if names is None else names
    return countermodel(seq, max_states, len(names)) is None


# ------------------------------------------------------------------ QN° axioms


def qn_schemas():
    """Propositional axiom schemata of the Hilbert presentation, as functions of A, B, C."""
    return {
        "K": (2, lambda a, b, c: Imp(a, Imp(b, a))),
        "S": (3, lambda a, b, c: Imp(Imp(a, Imp(b, c)), Imp(Imp(a, b), Imp(a, c)))),
        "and-elim-l": (2, lambda a, b, c: Imp(conj(a, b), a)),
        "and-elim-r": (2, lambda a, b, c: Imp(conj(a, b), b)),
        "or-intro-l": (2, lambda a, b, c: Imp(a, Or(a, b))),
        "or-intro-r": (2, lambda a, b, c: Imp(b, Or(a, b))),
        "and-intro": (2, lambda a, b, c: Imp(a, Imp(b, conj(a, b)))),
        "or-elim": (3, lambda a, b, c: Imp(Imp(a, c), Imp(Imp(b, c), Imp(Or(a, b), c)))),
        "dn-elim": (1, lambda a, b, c: Imp(Not(Not(a)), a)),
        "dn-intro": (1, lambda a, b, c: Imp(a, Not(Not(a)))),
    }


def qn_instances(pool):
    """(name, formula) for every schema instance with metavariables drawn from pool."""
    for name, (k, mk) in qn_schemas().items():
        for args in itertools.product(pool, repeat=k):
            args = tuple(args) + (pool[0],) * (3 - k)
            yield name, mk(*args)


def default_pool():
    """Formulas over two atoms used to instantiate schemata."""
    p, q = Atom("p"), Atom("q")
    return [p, q, Not(p), Or(p, q), Imp(p, q), conj(p, Not(q)), Bot()]


__all__ = [
    "Frame", "Model", "Countermodel", "Inconclusive", "OutOfScope", "UninterpretedError", "frames", "upsets",
    "extension", "force", "holds_at", "valid", "countermodel", "valid_all", "models",
    "qn_schemas", "qn_instances", "default_pool",
]
