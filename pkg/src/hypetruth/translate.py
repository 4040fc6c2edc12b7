"""Translations into the classical truth/falsity language and their audit.

tau (internal layer) follows the positive complexity of an L_T formula,
turning truth ascriptions into 𝕋 and negated ones into 𝔽; sigma (external
layer) commutes with negation, reads the conditional materially, and hands
truth ascriptions to tau.  In the target language 𝕋 is written Tr and 𝔽 is
written F; their arguments are τ-codes `taudot(t)`.

The code-level companion `tau_code` is the same recursion run on decoded
codes, so the two layers agree by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .coding import decode_formula, encode, sent, value
from .semantics import OutOfScope, _term_guarded
from .syntax import (
    All, Atom, Bot, Eq, Fa, Fn, Imp, Not, Num, Or, Pr, Tr, conj, conj_all, substitute,
)


class TranslationError(ValueError):
    pass


def _t(t) -> Fn:
    return Fn("taudot", (t,))


def tau(a):
    """The internal translation of an L_T (or L_T(P)) formula."""
    if isinstance(a, (Eq, Bot)):
        return a
    if isinstance(a, Tr):
        return Tr(_t(a.arg))
    if isinstance(a, Pr):
        return a
    if isinstance(a, Or):
        return Or(tau(a.left), tau(a.right))
    if isinstance(a, All):
        return All(a.var, tau(a.body))
    if isinstance(a, Not):
        b = a.body
        if isinstance(b, (Eq, Bot)):
            return a
        if isinstance(b, Tr):
            return Fa(_t(b.arg))
        if isinstance(b, Pr):
            return a
        if isinstance(b, Not):
            return tau(b.body)
        if isinstance(b, Or):
            return conj(tau(Not(b.left)), tau(Not(b.right)))
        if isinstance(b, All):
            return Not(All(b.var, Not(tau(Not(b.body)))))
    raise TranslationError(f"no translation clause for {a}")


def sigma(a):
    """The external translation of an L_T→(P) formula."""
    if isinstance(a, (Eq, Pr, Bot)):
        return a
    if isinstance(a, Tr):
        return Tr(_t(a.arg))
    if isinstance(a, Not):
        if isinstance(a.body, Tr):
            return Fa(_t(a.body.arg))
        return Not(sigma(a.body))
    if isinstance(a, Or):
        return Or(sigma(a.left), sigma(a.right))
    if isinstance(a, Imp):
        return Or(Not(sigma(a.left)), sigma(a.right))
    if isinstance(a, All):
        return All(a.var, sigma(a.body))
    raise TranslationError(f"no translation clause for {a}")


def sigma_sequent(seq):
    """(⋀Γ → ⋁Δ)^σ."""
    ante = conj_all(list(seq.ante)) if seq.ante else None
    succ = None
    for d in seq.succ:
        succ = d if succ is None else Or(succ, d)
    if succ is None:
        succ = Bot()
    return sigma(Imp(ante, succ) if ante is not None else succ)


@lru_cache(maxsize=65536)
def tau_code(c: int) -> int:
    """Code of the τ-translation of the formula coded by c; other numbers are fixed."""
    f = decode_formula(c)
    if f is None:
        return c
    try:
        return encode(tau(f))
    except TranslationError:
        return c


# ------------------------------------------------------------------ classical evaluation


@dataclass
class TranslationContext:
    """𝕋 and 𝔽 derived from the minimal fixed point of a universe."""

    universe: object
    MIN: frozenset
    p_ext: frozenset | None = None
    _T: frozenset = field(init=False, repr=False)
    _F: frozenset = field(init=False, repr=False)

    def __post_init__(self):
        u = self.universe
        self._T = frozenset(tau_code(c) for c in self.MIN)
        self._F = frozenset(tau_code(c) for c in u.codes
                            if encode(Not(decode_formula(c))) in self.MIN)

    @property
    def T(self) -> frozenset:
        return self._T

    @property
    def F(self) -> frozenset:
        return self._F

    def _arg(self, t) -> int:
        if isinstance(t, Fn) and t.name == "taudot":
            c = value(t.args[0])
            if c not in self.universe.codes and sent(c):
                raise OutOfScope(f"sentence code {c} is outside the universe")
            return tau_code(c)
        return value(t)

    def holds(self, a, cache: dict | None = None) -> bool:
        """Classical truth of a target-language sentence under (𝕋, 𝔽)."""
        cache = {} if cache is None else cache
        hit = cache.get(a)
        if hit is not None:
            return hit
        if isinstance(a, Bot):
            out = False
        elif isinstance(a, Eq):
            out = value(a.left) == value(a.right)
        elif isinstance(a, Tr):
            out = self._arg(a.arg) in self._T
        elif isinstance(a, Fa):
            out = self._arg(a.arg) in self._F
        elif isinstance(a, Pr):
            if self.p_ext is None:
                raise TranslationError("P occurs but no extension was given")
            out = value(a.arg) in self.p_ext
        elif isinstance(a, Not):
            out = not self.holds(a.body, cache)
        elif isinstance(a, Or):
            out = self.holds(a.left, cache) or self.holds(a.right, cache)
        elif isinstance(a, Imp):
            out = not self.holds(a.left, cache) or self.holds(a.right, cache)
        elif isinstance(a, All):
            u = self.universe
            dom = range(u.bound)
            if _term_guarded(a):
                from .coding import num_code

                dom = [num_code(d) for d in dom]
            out = all(self.holds(substitute(a.body, a.var, Num(d)), cache) for d in dom)
        elif isinstance(a, Atom):
            raise TranslationError(f"atom {a.name} has no classical reading")
        else:
            raise TranslationError(f"cannot evaluate {a!r}")
        cache[a] = out
        return out


def context_for(fm) -> TranslationContext:
    """Build the context from a fixed-point model."""
    return TranslationContext(fm.universe, fm.MIN, fm.p_ext)


# ------------------------------------------------------------------ audit


@dataclass
class TranslationReport:
    sentences: int = 0
    negation_codes: int = 0
    axioms: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        out = [f"status: {'clean' if self.ok else 'violations'}",
               f"membership checks: {self.sentences}", f"negation-code checks: {self.negation_codes}",
               f"axiom instances: {self.axioms}", f"out of scope: {self.skipped}"]
        out += [f"failure: {f}" for f in self.failures[:20]]
        return out


def audit_translation(ctx: TranslationContext, axioms: bool = True) -> TranslationReport:
    """φ ∈ MIN iff φ^τ holds; 𝕋τ(¬̇x) ≡ 𝔽τ(x); σ-images of truth axioms hold."""
    rep = TranslationReport()
    u = ctx.universe
    cache: dict = {}
    for f in u.sentences:
        try:
            got = ctx.holds(tau(f), cache)
        except OutOfScope:
            rep.skipped += 1
            continue
        rep.sentences += 1
        if got != (encode(f) in ctx.MIN):
            rep.failures.append(f"membership: {f}")
    for c in u.codes:
        n = encode(Not(decode_formula(c)))
        if n not in u.codes:
            rep.skipped += 1
            continue
        rep.negation_codes += 1
        if (tau_code(n) in ctx.T) != (tau_code(c) in ctx.F):
            rep.failures.append(f"negation code: {decode_formula(c)}")
    if axioms:
        from .fixpoint import _instances

        for name, seq in _instances(u, ctx.p_ext):
            try:
                ok = ctx.holds(sigma_sequent(seq), cache)
            except OutOfScope:
                rep.skipped += 1
                continue
            rep.axioms += 1
            if not ok:
                rep.failures.append(f"{name}: {seq}")
    return rep


__all__ = [
    "TranslationError", "tau", "sigma", "sigma_sequent", "tau_code", "TranslationContext",
    "context_for", "audit_translation", "TranslationReport",
]
