"""Independent reference implementations used to cross-check the package."""

from __future__ import annotations

import itertools

from hypetruth.ordinals import ZERO, Ord


# ---------------------------------------------------------------- ordinals below ε0
# An ordinal below ε0 is a weakly decreasing list of exponents, each itself
# such a list (Cantor normal form written out as nested lists).


def to_list(x: Ord):
    """Nested-list form, or None if x uses a Veblen index above 0."""
    out = []
    for a, b in x.terms:
        if a != ZERO:
            return None
        e = to_list(b)
        if e is None:
            return None
        out.append(e)
    return out


def list_cmp(x, y) -> int:
    for a, b in zip(x, y):
        c = list_cmp(a, b)
        if c:
            return c
    return (len(x) > len(y)) - (len(x) < len(y))


def list_is_normal(x) -> bool:
    return all(list_cmp(a, b) >= 0 for a, b in zip(x, x[1:])) and all(list_is_normal(e) for e in x)


def below_omega_omega(max_size: int):
    """(ordinal as list of natural exponents, size) with size = Σ(1 + e)."""
    out = []

    def rec(prefix, budget, cap):
        out.append(list(prefix))
        for e in range(min(cap, budget - 1), -1, -1):
            if 1 + e <= budget:
                rec(prefix + [e], budget - 1 - e, e)

    rec([], max_size, max_size)
    return out


def nat_exponents_to_list(exps):
    return [[[]] * e for e in exps]


# ---------------------------------------------------------------- classical propositional logic


def classical_models(names):
    for bits in itertools.product((False, True), repeat=len(names)):
        yield dict(zip(names, bits))


# ---------------------------------------------------------------- four-valued truth valuation


def fde_fixed_point(u, p_ext=None, start: bool = False):
    """Sentences supported as true after iterating the FDE valuation to a fixed point.

    Each sentence carries a pair (told true, told false).  Truth ascriptions
    read the pair of the named sentence from the previous round; everything
    else is computed compositionally.  start=False gives the least fixed
    point, start=True the greatest.
    """
    from hypetruth.coding import decode_formula, encode, is_lt_sentence, value
    from hypetruth.syntax import All, Bot, Eq, Not, Num, Or, Pr, Tr, substitute

    codes = set(u.codes)
    cur = {c: (start, start) for c in codes}

    def val(f, env):
        if isinstance(f, Bot):
            return (False, True)
        if isinstance(f, Eq):
            same = value(f.left) == value(f.right)
            return (same, not same)
        if isinstance(f, Pr):
            inside = value(f.arg) in p_ext
            return (inside, not inside)
        if isinstance(f, Tr):
            c = value(f.arg)
            g = decode_formula(c)
            if g is None or not is_lt_sentence(g, u.allow_p):
                return (False, True)
            return env[c]
        if isinstance(f, Not):
            t, fl = val(f.body, env)
            return (fl, t)
        if isinstance(f, Or):
            a, b = val(f.left, env), val(f.right, env)
            return (a[0] or b[0], a[1] and b[1])
        if isinstance(f, All):
            vs = [val(substitute(f.body, f.var, Num(n)), env) for n in range(u.bound)]
            return (all(v[0] for v in vs), any(v[1] for v in vs))
        raise TypeError(f)

    while True:
        nxt = {c: val(decode_formula(c), cur) for c in codes}
        if nxt == cur:
            return frozenset(c for c in codes if cur[c][0])
        cur = nxt
