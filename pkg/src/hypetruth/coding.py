"""Goedel coding and evaluation of closed terms.

code = tag + K * payload, where the payload folds the children through the
bijective pairing of `pairing`.  Numerals are coded compactly (tag NUM with
payload n), so `num(n) = K * n` is the code of the numeral n.
"""

from __future__ import annotations

from functools import lru_cache

from .pairing import pair, unpair
from .syntax import (
    All, Atom, Bot, BOT, Eq, Fa, Fn, FUNCTION_ARITY, Imp, Meta, Not, Num, Or,
    Plus, Pr, Succ, Times, Tr, Var, free_vars, is_closed, substitute,
    subst_term, formula_children, ATOMIC,
)

TERM_TAGS = ["NUM", "VAR", "SUCC", "PLUS", "TIMES"] + [f"fn:{n}" for n in FUNCTION_ARITY]
FORMULA_TAGS = ["BOT", "EQ", "TR", "FA", "PR", "ATOM", "NOT", "OR", "IMP", "ALL"]
TAGS = TERM_TAGS + FORMULA_TAGS
TAG = {name: i for i, name in enumerate(TAGS)}
K = len(TAGS)

_FORMULA_TAG_IDS = {TAG[t] for t in FORMULA_TAGS}


class DecodeError(ValueError):
    pass


class EvalError(ValueError):
    pass


def _mk(tag: str, payload: int) -> int:
    return TAG[tag] + K * payload


def _pack(codes) -> int:
    codes = list(codes)
    if len(codes) == 1:
        return codes[0]
    out = codes[-1]
    for c in reversed(codes[:-1]):
        out = pair(c, out)
    return out


def _unpack(payload: int, n: int) -> list[int]:
    out = []
    for _ in range(n - 1):
        a, payload = unpair(payload)
        out.append(a)
    out.append(payload)
    return out


# ------------------------------------------------------------------ encode


def encode(x) -> int:
    """Code of a term or formula."""
    c = x.__dict__.get("_code")
    if c is None:
        c = _encode(x)
        object.__setattr__(x, "_code", c)
    return c


def _encode(x) -> int:
    if isinstance(x, Num):
        return _mk("NUM", x.value)
    if isinstance(x, Var):
        if x.index < 0:
            raise ValueError("bound placeholder variables have no code")
        return _mk("VAR", x.index)
    if isinstance(x, Succ):
        return _mk("SUCC", encode(x.arg))
    if isinstance(x, Plus):
        return _mk("PLUS", pair(encode(x.left), encode(x.right)))
    if isinstance(x, Times):
        return _mk("TIMES", pair(encode(x.left), encode(x.right)))
    if isinstance(x, Fn):
        return _mk(f"fn:{x.name}", _pack(encode(a) for a in x.args))
    if isinstance(x, Meta):
        raise ValueError("metavariables have no code")
    if isinstance(x, Bot):
        return _mk("BOT", 0)
    if isinstance(x, Eq):
        return _mk("EQ", pair(encode(x.left), encode(x.right)))
    if isinstance(x, Tr):
        return _mk("TR", encode(x.arg))
    if isinstance(x, Fa):
        return _mk("FA", encode(x.arg))
    if isinstance(x, Pr):
        return _mk("PR", encode(x.arg))
    if isinstance(x, Atom):
        return _mk("ATOM", int.from_bytes(x.name.encode(), "big"))
    if isinstance(x, Not):
        return _mk("NOT", encode(x.body))
    if isinstance(x, Or):
        return _mk("OR", pair(encode(x.left), encode(x.right)))
    if isinstance(x, Imp):
        return _mk("IMP", pair(encode(x.left), encode(x.right)))
    if isinstance(x, All):
        return _mk("ALL", pair(encode(Var(x.var)), encode(x.body)))
    raise TypeError(f"cannot encode {x!r}")


def num_code(n: int) -> int:
    return _mk("NUM", n)


def quote(x) -> Num:
    """The numeral of the code of x."""
    return Num(encode(x))


# ------------------------------------------------------------------ decode


@lru_cache(maxsize=65536)
def decode(c: int):
    """Inverse of `encode`; raises DecodeError on codes outside its image."""
    if c < 0:
        raise DecodeError("negative code")
    tag, payload = c % K, c // K
    name = TAGS[tag]
    if name == "NUM":
        return Num(payload)
    if name == "VAR":
        return Var(payload)
    if name == "SUCC":
        arg = _term(payload)
        if isinstance(arg, Num):
            raise DecodeError(f"{c}: successor of a numeral is not canonical")
        return Succ(arg)
    if name in ("PLUS", "TIMES"):
        a, b = unpair(payload)
        return (Plus if name == "PLUS" else Times)(_term(a), _term(b))
    if name.startswith("fn:"):
        fname = name[3:]
        args = _unpack(payload, FUNCTION_ARITY[fname])
        return Fn(fname, tuple(_term(a) for a in args))
    if name == "BOT":
        if payload:
            raise DecodeError(f"{c}: bottom carries no payload")
        return BOT
    if name == "EQ":
        a, b = unpair(payload)
        return Eq(_term(a), _term(b))
    if name in ("TR", "FA", "PR"):
        return {"TR": Tr, "FA": Fa, "PR": Pr}[name](_term(payload))
    if name == "ATOM":
        raw = payload.to_bytes(max(1, (payload.bit_length() + 7) // 8), "big")
        try:
            text = raw.decode()
        except UnicodeDecodeError:
            raise DecodeError(f"{c}: atom name is not text") from None
        if not (text.isidentifier() and text[0].islower()):
            raise DecodeError(f"{c}: bad atom name {text!r}")
        return Atom(text)
    if name == "NOT":
        return Not(_formula(payload))
    if name in ("OR", "IMP"):
        a, b = unpair(payload)
        return (Or if name == "OR" else Imp)(_formula(a), _formula(b))
    if name == "ALL":
        v, body = unpair(payload)
        var = decode(v)
        if not isinstance(var, Var):
            raise DecodeError(f"{c}: quantifier over a non-variable")
        return All(var.index, _formula(body))
    raise DecodeError(f"{c}: unknown tag")  # pragma: no cover


def is_formula_code(c: int) -> bool:
    return c % K in _FORMULA_TAG_IDS


def _term(c: int):
    if is_formula_code(c):
        raise DecodeError(f"{c}: expected a term code")
    return decode(c)


def _formula(c: int):
    if not is_formula_code(c):
        raise DecodeError(f"{c}: expected a formula code")
    return decode(c)


def try_decode(c: int):
    try:
        return decode(c)
    except (DecodeError, RecursionError):
        return None


def decode_formula(c: int):
    x = try_decode(c)
    return x if x is not None and is_formula_code(c) else None


def decode_term(c: int):
    x = try_decode(c)
    return x if x is not None and not is_formula_code(c) else None


# ------------------------------------------------------------------ classes


def is_lt_sentence(f, allow_p: bool = True) -> bool:
    """Closed formula of L_T (optionally with P): no conditional, no F, no atoms."""
    if f is None or free_vars(f):
        return False
    return _lt_shape(f, allow_p)


def _lt_shape(f, allow_p: bool) -> bool:
    if isinstance(f, (Imp, Fa, Atom)):
        return False
    if isinstance(f, Pr):
        return allow_p
    if isinstance(f, ATOMIC):
        return True
    return all(_lt_shape(c, allow_p) for c in formula_children(f))


def sent(c: int) -> bool:
    return is_lt_sentence(decode_formula(c))


def cterm(c: int) -> bool:
    t = decode_term(c)
    return t is not None and is_closed(t) and not _has_meta(t)


def _has_meta(t) -> bool:
    from .syntax import term_children

    return isinstance(t, Meta) or any(_has_meta(a) for a in term_children(t))


def isvar(c: int) -> bool:
    return isinstance(decode_term(c), Var)


def tr_depth(f) -> int | None:
    """Nesting depth of Tr over numeral arguments; None if some Tr argument
    is not a numeral coding an L_T formula."""
    if isinstance(f, Tr):
        if not isinstance(f.arg, Num):
            return None
        inner = decode_formula(f.arg.value)
        if inner is None or not _lt_shape(inner, False) or free_vars(inner):
            return None
        d = tr_depth(inner)
        return None if d is None else d + 1
    if isinstance(f, ATOMIC):
        return 0
    best = 0
    for c in formula_children(f):
        d = tr_depth(c)
        if d is None:
            return None
        best = max(best, d)
    return best


def sentence_level(c: int):
    """The least n with the code in the ramified class of level n, or None."""
    f = decode_formula(c)
    if f is None or not is_lt_sentence(f, allow_p=False):
        return None
    return tr_depth(f)


def sent_level(alpha, c: int) -> bool:
    """Membership of the code c in the ramified sentence class at level alpha.

    Level 0 holds the arithmetical sentences; the successor clause admits
    Tr applied to the numeral of a sentence one level down and closes under
    negation, disjunction and quantification; limits take the union.
    """
    from .ordinals import as_nat

    n = sentence_level(c)
    if n is None:
        return False
    k = as_nat(alpha)
    return k is None or n <= k


def sent_below(alpha, c: int) -> bool:
    """Some level strictly below alpha contains the code."""
    from .ordinals import as_nat

    n = sentence_level(c)
    if n is None:
        return False
    k = as_nat(alpha)
    return k is None or n < k


# ------------------------------------------------------------------ evaluation


def value(t) -> int:
    """Standard value of a closed term."""
    if isinstance(t, Num):
        return t.value
    if isinstance(t, Succ):
        return value(t.arg) + 1
    if isinstance(t, Plus):
        return value(t.left) + value(t.right)
    if isinstance(t, Times):
        return value(t.left) * value(t.right)
    if isinstance(t, Fn):
        return apply_fn(t.name, [value(a) for a in t.args])
    if isinstance(t, Var):
        raise EvalError(f"open term: variable {t}")
    raise EvalError(f"cannot evaluate {t!r}")


eval_term = value


def _sub(x: int, v: int, y: int) -> int:
    target = try_decode(x)
    var = decode_term(v)
    s = decode_term(y)
    if target is None or not isinstance(var, Var) or s is None:
        return x
    if is_formula_code(x):
        return encode(substitute(target, var.index, s))
    return encode(subst_term(target, var.index, s))


def apply_fn(name: str, args: list[int]) -> int:
    if name == "num":
        return num_code(args[0])
    if name == "sub":
        return _sub(*args)
    if name == "negdot":
        return _mk("NOT", args[0])
    if name == "vordot":
        return _mk("OR", pair(*args))
    if name == "alldot":
        return _mk("ALL", pair(*args))
    if name == "eqdot":
        return _mk("EQ", pair(*args))
    if name == "trdot":
        return _mk("TR", args[0])
    if name == "pdot":
        return _mk("PR", args[0])
    if name == "pair":
        return pair(*args)
    if name == "proj1":
        return unpair(args[0])[0]
    if name == "proj2":
        return unpair(args[0])[1]
    if name == "val":
        t = decode_term(args[0])
        if t is None or not cterm(args[0]):
            return 0
        return value(t)
    if name == "cterm":
        return int(cterm(args[0]))
    if name == "sent":
        return int(sent(args[0]))
    if name == "isvar":
        return int(isvar(args[0]))
    if name == "slev":
        from .ordinals import ord_decode

        a = ord_decode(args[0])
        return int(a is not None and sent_level(a, args[1]))
    if name == "taudot":
        from .translate import tau_code

        return tau_code(args[0])
    if name in ("fh", "fsup"):
        from .derivers import f_code

        return f_code(name, args[0], args[1])
    from .ordcodes import apply_ord

    return apply_ord(name, args)


def normalize(f):
    """Replace every closed term by the numeral of its value."""
    if isinstance(f, Eq):
        return Eq(_norm_term(f.left), _norm_term(f.right))
    if isinstance(f, (Tr, Fa, Pr)):
        return type(f)(_norm_term(f.arg))
    if isinstance(f, Not):
        return Not(normalize(f.body))
    if isinstance(f, Or):
        return Or(normalize(f.left), normalize(f.right))
    if isinstance(f, Imp):
        return Imp(normalize(f.left), normalize(f.right))
    if isinstance(f, All):
        return All(f.var, normalize(f.body))
    return f


def _norm_term(t):
    if isinstance(t, Num):
        return t
    if is_closed(t) and not _has_meta(t):
        return Num(value(t))
    if isinstance(t, Succ):
        from .syntax import succ

        return succ(_norm_term(t.arg))
    if isinstance(t, Plus):
        return Plus(_norm_term(t.left), _norm_term(t.right))
    if isinstance(t, Times):
        return Times(_norm_term(t.left), _norm_term(t.right))
    if isinstance(t, Fn):
        return Fn(t.name, tuple(_norm_term(a) for a in t.args))
    return t
