"""ASCII pretty printer; `parse(show(f)) == f` for every formula."""

from __future__ import annotations

from .syntax import (
    All, Atom, Bot, Eq, Fa, Imp, Not, Or, Pr, Tr, as_conj, as_prec, ONE,
)

_IMP, _OR, _AND, _UN, _ATOM = 1, 2, 3, 4, 5


def _as_iff(f):
    c = as_conj(f)
    if c and isinstance(c[0], Imp) and isinstance(c[1], Imp):
        a, b = c
        if a.left == b.right and a.right == b.left:
            return a.left, a.right
    return None


def _as_exists(f):
    if isinstance(f, Not) and isinstance(f.body, All) and isinstance(f.body.body, Not):
        return f.body.var, f.body.body.body
    return None


def _wrap(s: str, level: int, ctx: int) -> str:
    return f"({s})" if level < ctx else s


def show(f, ctx: int = 0) -> str:
    if isinstance(f, Bot):
        return "bot"
    if isinstance(f, Eq):
        p = as_prec(f)
        if p is not None:
            return f"{p[0]} < {p[1]}"
        return f"{f.left}={f.right}"
    if isinstance(f, Tr):
        return f"Tr({f.arg})"
    if isinstance(f, Fa):
        return f"F({f.arg})"
    if isinstance(f, Pr):
        return f"P({f.arg})"
    if isinstance(f, Atom):
        return f.name
    pair = _as_iff(f)
    if pair is not None:
        return _wrap(f"{show(pair[0], _OR)} <-> {show(pair[1], _OR)}", _IMP, ctx)
    pair = as_conj(f)
    if pair is not None:
        return _wrap(f"{show(pair[0], _AND)} & {show(pair[1], _UN)}", _AND, ctx)
    ex = _as_exists(f)
    if ex is not None:
        return _wrap(f"ex v{ex[0]}. {show(ex[1], _UN)}", _UN, ctx)
    if isinstance(f, Not):
        body = f.body
        inner = f"({show(body)})" if isinstance(body, Eq) else show(body, _UN)
        return _wrap("!" + inner, _UN, ctx)
    if isinstance(f, Or):
        return _wrap(f"{show(f.left, _OR)} | {show(f.right, _AND)}", _OR, ctx)
    if isinstance(f, Imp):
        return _wrap(f"{show(f.left, _OR)} -> {show(f.right, _IMP)}", _IMP, ctx)
    if isinstance(f, All):
        return _wrap(f"all v{f.var}. {show(f.body, _UN)}", _UN, ctx)
    raise TypeError(f"not a formula: {f!r}")


def show_sequent(ante, succ) -> str:
    left = ", ".join(show(a) for a in ante)
    right = ", ".join(show(b) for b in succ)
    return f"{left} => {right}".strip()


__all__ = ["show", "show_sequent", "ONE"]
