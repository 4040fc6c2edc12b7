"""Veblen normal-form notations for ordinals below Gamma_0.

A notation is a weakly decreasing sum of terms phi(a, b), with phi(0, b) read
as omega^b.  Normal form for a single term requires that b is not a fixed
point of phi_a, i.e. b is not a lone term phi(c, d) with c > a.
"""

from __future__ import annotations

import enum
import random
import re
from dataclasses import dataclass
from functools import total_ordering

from .pairing import pair, unpair


class NotNormal(ValueError):
    pass


@total_ordering
@dataclass(frozen=True)
class Ord:
    terms: tuple = ()  # of (Ord, Ord)

    # -- order
    def __lt__(self, other: "Ord") -> bool:
        return _cmp(self, other) < 0

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        return show(self)

    __repr__ = __str__

    def __hash__(self):
        return hash(self.terms)

    @property
    def is_term(self) -> bool:
        return len(self.terms) == 1


ZERO = Ord(())
ONE = Ord(((ZERO, ZERO),))


class Kind(enum.Enum):
    ZERO = "Zero"
    SUCCESSOR = "Successor"
    LIMIT = "Limit"


def _cmp_term(t1, t2) -> int:
    if t1 is t2:
        return 0
    a1, b1 = t1
    a2, b2 = t2
    c = _cmp(a1, a2)
    if c == 0:
        return _cmp(b1, b2)
    if c < 0:
        # phi(a1,b1) < phi(a2,b2) iff b1 < phi(a2,b2)
        return -1 if _cmp(b1, Ord((t2,))) < 0 else 1
    return -_cmp_term(t2, t1)


def _cmp(x: Ord, y: Ord) -> int:
    if x is y:
        return 0
    for t1, t2 in zip(x.terms, y.terms):
        c = _cmp_term(t1, t2)
        if c:
            return c
    return (len(x.terms) > len(y.terms)) - (len(x.terms) < len(y.terms))


def is_normal(x: Ord) -> bool:
    prev = None
    for a, b in x.terms:
        if not (is_normal(a) and is_normal(b)):
            return False
        if b.is_term and _cmp(b.terms[0][0], a) > 0:
            return False
        if prev is not None and _cmp_term(prev, (a, b)) < 0:
            return False
        prev = (a, b)
    return True


def _require(*xs):
    for x in xs:
        if not isinstance(x, Ord) or not is_normal(x):
            raise NotNormal(f"not a normal-form notation: {x!r}")


def compare(a: Ord, b: Ord) -> str:
    _require(a, b)
    c = _cmp(a, b)
    return "Less" if c < 0 else "Greater" if c > 0 else "Equal"


# ------------------------------------------------------------- arithmetic


def veblen(a: Ord, b: Ord) -> Ord:
    if b.is_term and _cmp(b.terms[0][0], a) > 0:
        return b
    return Ord(((a, b),))


def omega_pow(a: Ord) -> Ord:
    return veblen(ZERO, a)


def add(x: Ord, y: Ord) -> Ord:
    if not y.terms:
        return x
    lead = y.terms[0]
    keep = [t for t in x.terms if _cmp_term(t, lead) >= 0]
    return Ord(tuple(keep) + y.terms)


def nat(n: int) -> Ord:
    return Ord(((ZERO, ZERO),) * n)


def mul_nat(x: Ord, n: int) -> Ord:
    """x * n for a natural number n."""
    if n == 0 or not x.terms:
        return ZERO
    lead = x.terms[0]
    k = 0
    while k < len(x.terms) and x.terms[k] == lead:
        k += 1
    return Ord((lead,) * (k * n) + x.terms[k:])


OMEGA = omega_pow(ONE)


def as_nat(x: Ord):
    """The natural number denoted by x, or None if x >= omega."""
    if all(t == (ZERO, ZERO) for t in x.terms):
        return len(x.terms)
    return None


def _exponent(t) -> Ord:
    a, b = t
    return b if not a.terms else Ord((t,))


def e_of(x: Ord) -> Ord:
    return _exponent(x.terms[-1]) if x.terms else ZERO


def h_of(x: Ord) -> Ord:
    return Ord(x.terms[:-1]) if x.terms else ZERO


def classify(x: Ord):
    """(Kind, predecessor-or-None)."""
    if not x.terms:
        return Kind.ZERO, None
    if x.terms[-1] == (ZERO, ZERO):
        return Kind.SUCCESSOR, Ord(x.terms[:-1])
    return Kind.LIMIT, None


def omega_tower(n: int) -> Ord:
    out = ONE
    for _ in range(n):
        out = omega_pow(out)
    return out


def gamma_seq(n: int) -> Ord:
    out = OMEGA
    for _ in range(n):
        out = veblen(out, ZERO)
    return out


# ------------------------------------------------------------- text form


def show(x: Ord) -> str:
    if not x.terms:
        return "0"
    parts = []
    i = 0
    terms = x.terms
    while i < len(terms):
        if terms[i] == (ZERO, ZERO):
            parts.append(str(len(terms) - i))
            break
        parts.append(_show_term(terms[i]))
        i += 1
    return "+".join(parts)


def _show_term(t) -> str:
    a, b = t
    if a.terms:
        return f"phi({show(a)},{show(b)})"
    if b == ONE:
        return "w"
    s = show(b)
    if len(b.terms) == 1 or re.fullmatch(r"\d+", s):
        return f"w^{s}"
    return f"w^({s})"


_OTOK = re.compile(r"\s*(\d+|phi|w|[()+^,*])")


def parse_ord(text: str) -> Ord:
    toks = []
    pos = 0
    text = text.strip().replace("ω", "w").replace("φ", "phi")
    while pos < len(text):
        m = _OTOK.match(text, pos)
        if not m:
            raise ValueError(f"bad ordinal syntax at position {pos}: {text!r}")
        toks.append(m.group(1))
        pos = m.end()
    toks.append("")
    i = 0

    def peek():
        return toks[i]

    def eat(tok):
        nonlocal i
        if toks[i] != tok:
            raise ValueError(f"expected {tok!r} in ordinal {text!r}")
        i += 1

    def sum_():
        out = prod()
        while peek() == "+":
            eat("+")
            out = add(out, prod())
        return out

    def prod():
        out = power()
        while peek() == "*":
            eat("*")
            n = peek()
            if not n.isdigit():
                raise ValueError("only natural-number right factors are supported")
            eat(n)
            out = mul_nat(out, int(n))
        return out

    def power():
        nonlocal i
        if peek() == "w":
            eat("w")
            if peek() == "^":
                eat("^")
                return omega_pow(power())
            return OMEGA
        return atom()

    def atom():
        tok = peek()
        if tok.isdigit():
            eat(tok)
            return nat(int(tok))
        if tok == "phi":
            eat("phi")
            eat("(")
            a = sum_()
            eat(",")
            b = sum_()
            eat(")")
            return veblen(a, b)
        if tok == "(":
            eat("(")
            out = sum_()
            eat(")")
            return out
        raise ValueError(f"unexpected {tok!r} in ordinal {text!r}")

    out = sum_()
    if peek() != "":
        raise ValueError(f"trailing input in ordinal {text!r}")
    return out


# ------------------------------------------------------------- codes

# 0 codes zero; t + rest codes as 1 + pair(pair(a, b), rest).  Every natural
# decodes to a term tree, but only normal-form trees count as notations.


def ord_encode(x: Ord) -> int:
    out = 0
    for a, b in reversed(x.terms):
        out = 1 + pair(pair(ord_encode(a), ord_encode(b)), out)
    return out


def ord_decode(c: int):
    """The notation coded by c, or None when c is not a normal-form code."""
    x = _decode_raw(c)
    return x if x is not None and is_normal(x) else None


def _decode_raw(c: int, budget: list | None = None):
    if budget is None:
        budget = [10_000]
    terms = []
    while c:
        budget[0] -= 1
        if budget[0] < 0:
            return None
        ab, c = unpair(c - 1)
        a, b = unpair(ab)
        da, db = _decode_raw(a, budget), _decode_raw(b, budget)
        if da is None or db is None:
            return None
        terms.append((da, db))
    return Ord(tuple(terms))


# ------------------------------------------------------------- sampling


def random_ord(rng: random.Random, depth: int = 3, width: int = 3) -> Ord:
    """A random normal-form notation built through the public constructors."""
    if depth <= 0 or rng.random() < 0.2:
        return nat(rng.randint(0, 3))
    out = ZERO
    for _ in range(rng.randint(1, width)):
        r = rng.random()
        if r < 0.5:
            t = omega_pow(random_ord(rng, depth - 1, width))
        elif r < 0.8:
            t = veblen(random_ord(rng, depth - 2, 2), random_ord(rng, depth - 1, width))
        else:
            t = nat(rng.randint(1, 3))
        out = add(out, t)
    return out
