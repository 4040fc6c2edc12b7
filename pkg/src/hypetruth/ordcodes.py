"""Ordinal function symbols acting on notation codes.

Inputs that are not normal-form codes are mapped to the fixed junk value
JUNK, and `prec` is false whenever an argument is junk.  `omul(a, n)` takes
a natural number n as its right argument and is 0 for n = 0 whatever a is.
"""

from __future__ import annotations

from functools import lru_cache

from .ordinals import (
    ONE, ZERO, Ord, add, e_of, h_of, mul_nat, omega_pow, ord_decode, ord_encode,
    veblen,
)
from .pairing import pair


def _raw_encode(x: Ord) -> int:
    out = 0
    for a, b in reversed(x.terms):
        out = 1 + pair(pair(_raw_encode(a), _raw_encode(b)), out)
    return out


# 1 + omega written in the wrong order: never a normal form
JUNK = _raw_encode(Ord(((ZERO, ZERO), (ZERO, ONE))))


@lru_cache(maxsize=65536)
def _dec(c: int):
    return ord_decode(c)


def apply_ord(name: str, args: list[int]) -> int:
    if name == "omul":
        a, n = args
        if n == 0:
            return 0
        x = _dec(a)
        return JUNK if x is None else ord_encode(mul_nat(x, n))
    xs = [_dec(a) for a in args]
    if name == "prec":
        return int(None not in xs and xs[0] < xs[1])
    if None in xs:
        return JUNK
    if name == "oadd":
        return ord_encode(add(*xs))
    if name == "opow":
        return ord_encode(omega_pow(xs[0]))
    if name == "ophi":
        return ord_encode(veblen(*xs))
    if name == "oe":
        return ord_encode(e_of(xs[0]))
    if name == "oh":
        return ord_encode(h_of(xs[0]))
    raise ValueError(f"unknown function symbol {name!r}")


def ord_term(x: Ord):
    """The numeral naming the code of x."""
    from .syntax import Num

    return Num(ord_encode(x))
