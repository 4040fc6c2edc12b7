"""Kripkean fixed points over finite sentence universes, the two-state
minimal model, and the soundness audit of the truth axioms.

A universe is a finite set of L_T sentences closed under the references of
the four-valued clauses below, under one or two leading negations, and
under quotation by Tr up to a depth bound.  Quantifiers range over the
numerals 0..bound-1.

Clauses of the positive inductive definition (X the previous stage):

    s=t, s≠t          true atomic arithmetic
    Tr t              val(t) ∈ X
    ¬Tr t             ¬̇val(t) ∈ X, or val(t) is not a sentence code
    ¬⊥                always
    ¬¬φ               φ ∈ X
    φ∨ψ, ¬(φ∨ψ)       φ ∈ X or ψ ∈ X;  ¬φ ∈ X and ¬ψ ∈ X
    ∀vφ, ¬∀vφ         every φ(n) ∈ X;  some ¬φ(n) ∈ X
    P t, ¬P t         val(t) ∈ E;  val(t) ∉ E   (E the extension of P)
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .coding import decode_formula, encode, is_lt_sentence, value
from .coding import cterm, num_code
from .semantics import Frame, Model, OutOfScope, holds_at
from .syntax import All, Bot, Eq, Fn, Num, Not, Or, Pr, Tr, Var, substitute

SIZE_CAP = 50_000


class UniverseError(ValueError):
    pass


# ------------------------------------------------------------------ diagonal sentences


def _diagonal(wrap) -> object:
    """The sentence D with D = wrap(Tr ⌜D⌝), built from sub and num."""
    x = Var(0)
    qx = Num(encode(x))
    body = wrap(Tr(Fn("sub", (x, qx, Fn("num", (x,))))))
    d = Num(encode(body))
    return wrap(Tr(Fn("sub", (d, qx, Fn("num", (d,))))))


def liar():
    return _diagonal(Not)


def truthteller():
    return _diagonal(lambda f: f)


# ------------------------------------------------------------------ universes


def _is_sentence_code(c: int, allow_p: bool) -> bool:
    f = decode_formula(c)
    return f is not None and is_lt_sentence(f, allow_p)


@dataclass
class Universe:
    sentences: list
    codes: dict  # code -> index
    depth: int
    bound: int
    allow_p: bool
    levels: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.sentences)

    def __contains__(self, f) -> bool:
        return encode(f) in self.codes

    def code_set(self) -> frozenset:
        return frozenset(self.codes)

    def domain(self) -> tuple:
        return tuple(range(self.bound))

    def is_sentence_code(self, c: int) -> bool:
        return _is_sentence_code(c, self.allow_p)


def _neg_depth(f) -> int:
    k = 0
    while isinstance(f, Not):
        f, k = f.body, k + 1
    return k


def references(f, bound: int, allow_p: bool) -> list:
    """Sentences whose membership decides that of f under the clauses."""
    neg = isinstance(f, Not)
    g = f.body if neg else f
    if isinstance(g, Tr):
        c = value(g.arg)
        if not _is_sentence_code(c, allow_p):
            return []
        inner = decode_formula(c)
        return [Not(inner) if neg else inner]
    if isinstance(g, Not):
        return [g.body] if neg else [g]
    if isinstance(g, Or):
        return [Not(g.left), Not(g.right)] if neg else [g.left, g.right]
    if isinstance(g, All):
        inst = [substitute(g.body, g.var, Num(n)) for n in range(bound)]
        return [Not(i) for i in inst] if neg else inst
    return []


def build_universe(seeds, depth: int = 3, liar_flag: bool = False, truthteller_flag: bool = False,
                   bound: int = 3, allow_p: bool = False, cap: int = SIZE_CAP,
                   p_atoms: int = 0) -> Universe:
    todo = [(f, 0) for f in seeds] + [(Pr(Num(n)), 0) for n in range(p_atoms)]
    allow_p = allow_p or p_atoms > 0
    if liar_flag:
        todo.append((liar(), 0))
    if truthteller_flag:
        todo.append((truthteller(), 0))
    sentences: list = []
    codes: dict = {}
    levels: dict = {}
    while todo:
        f, lvl = todo.pop()
        if not is_lt_sentence(f, allow_p):
            raise UniverseError(f"not a sentence of the truth language: {f}")
        c = encode(f)
        if c in codes:
            if lvl < levels[c]:
                levels[c] = lvl
                todo.append((f, lvl))  # revisit: a lower level may allow more quoting
            else:
                continue
        else:
            codes[c] = len(sentences)
            sentences.append(f)
            levels[c] = lvl
            if len(sentences) > cap:
                raise UniverseError(f"closure exceeds the size cap {cap}")
        for r in references(f, bound, allow_p):
            todo.append((r, lvl))
        if _neg_depth(f) < 2:
            todo.append((Not(f), lvl))
        if lvl < depth:
            todo.append((Tr(Num(c)), lvl + 1))
    cfg = {"seeds": [str(f) for f in seeds], "depth": depth, "bound": bound,
           "liar": liar_flag, "truthteller": truthteller_flag, "p_atoms": p_atoms}
    return Universe(sentences, codes, depth, bound, allow_p, levels, cfg)


# ------------------------------------------------------------------ the operator


@dataclass
class _Rule:
    kind: str  # "T", "F", "any", "all", "P+", "P-"
    refs: tuple = ()
    arg: int = 0


def _compile(u: Universe, f) -> _Rule:
    neg = isinstance(f, Not)
    g = f.body if neg else f
    if isinstance(g, Bot):
        return _Rule("T" if neg else "F")
    if isinstance(g, Eq):
        same = value(g.left) == value(g.right)
        return _Rule("T" if same != neg else "F")
    if isinstance(g, Pr):
        return _Rule("P-" if neg else "P+", arg=value(g.arg))
    if isinstance(g, Tr) and not u.is_sentence_code(value(g.arg)):
        return _Rule("T" if neg else "F")
    refs = references(f, u.bound, u.allow_p)
    idx = []
    for r in refs:
        c = encode(r)
        if c not in u.codes:
            raise UniverseError(f"closure violation: {r} is not in the universe")
        idx.append(c)
    if isinstance(g, (Tr, Not)):
        return _Rule("any", tuple(idx))
    if isinstance(g, Or):
        return _Rule("all" if neg else "any", tuple(idx))
    if isinstance(g, All):
        return _Rule("any" if neg else "all", tuple(idx))
    raise UniverseError(f"no clause for {f}")


def _rules(u: Universe) -> list:
    cached = getattr(u, "_rules", None)
    if cached is None:
        cached = [(encode(f), _compile(u, f)) for f in u.sentences]
        u._rules = cached
    return cached


def phi_step(u: Universe, X, p_ext=None) -> frozenset:
    """One application of the operator to the set X of sentence codes."""
    X = frozenset(X)
    stray = X - u.codes.keys()
    if stray:
        raise UniverseError(f"code {min(stray)} is outside the universe")
    out = set()
    for c, r in _rules(u):
        k = r.kind
        if k == "T":
            ok = True
        elif k == "F":
            ok = False
        elif k == "any":
            ok = any(x in X for x in r.refs)
        elif k == "all":
            ok = all(x in X for x in r.refs)
        else:
            if p_ext is None:
                raise UniverseError("P occurs but no extension was given")
            ok = (r.arg in p_ext) == (k == "P+")
        if ok:
            out.add(c)
    return frozenset(out)


def min_fixed_point(u: Universe, p_ext=None) -> frozenset:
    X: frozenset = frozenset()
    while True:
        Y = phi_step(u, X, p_ext)
        if Y == X:
            return X
        X = Y


def max_fixed_point(u: Universe, p_ext=None) -> frozenset:
    X = u.code_set()
    while True:
        Y = phi_step(u, X, p_ext)
        if Y == X:
            return X
        X = Y


def _neg_code(c: int) -> int:
    return encode(Not(decode_formula(c)))


def negation_member(u: Universe, S, c: int) -> bool:
    """Whether ¬φ ∈ S for the code c of φ, reading ¬¬ψ as ψ outside u."""
    f = Not(decode_formula(c))
    while encode(f) not in u.codes and isinstance(f, Not) and isinstance(f.body, Not):
        f = f.body.body
    return encode(f) in S


def star(S, u: Universe) -> frozenset:
    """S* = {φ ∈ u : ¬φ ∉ S}."""
    return frozenset(c for c in u.codes if not negation_member(u, S, c))


def random_chain(u: Universe, rng: random.Random, length: int = 3) -> list:
    """An increasing chain X1 ⊆ X2 ⊆ ... of subsets of u."""
    codes = sorted(u.codes)
    cur = frozenset(x for x in codes if rng.random() < 0.3)
    out = [cur]
    for _ in range(length - 1):
        cur = cur | frozenset(x for x in codes if rng.random() < 0.3)
        out.append(cur)
    return out


# ------------------------------------------------------------------ the minimal model


TWO_STATE = Frame(2, frozenset({(0, 0), (1, 1), (0, 1)}), (1, 0))


@dataclass
class FixpointModel:
    universe: Universe
    MIN: frozenset
    MAX: frozenset
    model: Model
    p_ext: frozenset | None = None


def build_model(u: Universe, p_ext=None) -> FixpointModel:
    """States MIN ≤ MAX with * swapping them and Tr^S = S."""
    lo, hi = min_fixed_point(u, p_ext), max_fixed_point(u, p_ext)
    preds = {"Tr": (lo, hi)}
    if p_ext is not None:
        pe = frozenset(p_ext)
        preds["P"] = (pe, pe)
    m = Model(TWO_STATE, {}, preds, u.domain(), scope=u,
              term_domain=tuple(num_code(d) for d in u.domain()))
    return FixpointModel(u, lo, hi, m, None if p_ext is None else frozenset(p_ext))


# ------------------------------------------------------------------ audit


@dataclass
class AuditReport:
    checked: int = 0
    skipped: int = 0
    violations: list = field(default_factory=list)
    by_schema: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        out = [f"status: {'clean' if self.ok else 'violations'}",
               f"instances checked: {self.checked}", f"instances out of scope: {self.skipped}"]
        for k in sorted(self.by_schema):
            out.append(f"schema {k}: {self.by_schema[k]}")
        for v in self.violations[:20]:
            out.append(f"violation: {v}")
        return out


def _instances(u: Universe, p_ext):
    from .axioms import instantiate

    codes = sorted(u.codes)
    junk = [n for n in range(64) if not u.is_sentence_code(n) and not cterm(n)][:6]
    for f in u.sentences:
        if isinstance(f, Eq):
            yield "KFL1", instantiate("KFL1", x=Num(encode(f.left)), y=Num(encode(f.right)))
        if isinstance(f, Or):
            yield "KFL4", instantiate("KFL4", x=Num(encode(f.left)), y=Num(encode(f.right)))
        if isinstance(f, All):
            yield "KFL5", instantiate("KFL5", v=Num(encode(Var(f.var))), x=Num(encode(f.body)))
    for c in codes + junk:
        yield "KFL2", instantiate("KFL2", x=Num(c))
        yield "KFL3", instantiate("KFL3", x=Num(c))
        yield "KFL6", instantiate("KFL6", x=Num(c))
    yield "KFL1", instantiate("KFL1", x=Num(junk[0]), y=Num(junk[-1]))
    if p_ext is not None:
        for n in range(max(p_ext, default=0) + 3):
            yield "KFL-P", instantiate("KFL-P", x=Num(n))


def audit_kfl(fm: FixpointModel, extra=()) -> AuditReport:
    """Evaluate every KFL1-6 (and KFL-P) instance over the universe at both states."""
    rep = AuditReport()
    items = list(_instances(fm.universe, fm.p_ext)) + list(extra)
    for name, seq in items:
        try:
            for w in (0, 1):
                if not holds_at(fm.model, w, seq.ante, seq.succ, {}):
                    rep.violations.append(f"{name} at {'MIN' if w == 0 else 'MAX'}: {seq}")
                    break
            rep.checked += 1
            rep.by_schema[name] = rep.by_schema.get(name, 0) + 1
        except OutOfScope:
            rep.skipped += 1
    return rep


def disquotation_failures(fm: FixpointModel) -> list:
    """Sentences A of the universe for which Tr⌜A⌝ ↔ A fails at some state."""
    from .syntax import iff

    bad = []
    for f in fm.universe.sentences:
        g = iff(Tr(Num(encode(f))), f)
        try:
            if not all(holds_at(fm.model, w, (), (g,), {}) for w in (0, 1)):
                bad.append(f)
        except OutOfScope:
            continue
    return bad


def universe_from_config(cfg: dict) -> tuple[Universe, frozenset | None]:
    """Build a universe from a config: seeds, depth, bound, liar, truthteller, pext."""
    from .parser import parse

    p_ext = cfg.get("pext")
    if isinstance(p_ext, dict):
        p_ext = range(p_ext.get("start", 0), p_ext["stop"] + 1, p_ext.get("step", 1))
    p_ext = None if p_ext is None else frozenset(p_ext)
    for key in ("depth", "bound"):
        if key in cfg and (not isinstance(cfg[key], int) or cfg[key] < 0):
            raise UniverseError(f"{key} must be a non-negative integer")
    u = build_universe([parse(s) for s in cfg.get("seeds", [])], cfg.get("depth", 3),
                       bool(cfg.get("liar", False)), bool(cfg.get("truthteller", False)),
                       cfg.get("bound", 3), p_ext is not None,
                       p_atoms=0 if p_ext is None else max(p_ext, default=0) + 3)
    if p_ext is not None:
        u.config["pext"] = sorted(p_ext)
    return u, p_ext


def load_universe(path) -> tuple[Universe, frozenset | None]:
    """Read a universe config file (TOML)."""
    try:
        import tomllib
    except ModuleNotFoundError:  # Python < 3.11
        import tomli as tomllib

    with open(path, "rb") as fh:
        return universe_from_config(tomllib.load(fh))


def dump_model(fm: FixpointModel) -> dict:
    """States, order, star and extensions as sorted code lists."""
    fr = fm.model.frame
    return {
        "universe": fm.universe.config,
        "states": ["MIN", "MAX"],
        "le": sorted([list(p) for p in fr.le]),
        "star": list(fr.star),
        "extensions": {"Tr": [sorted(fm.MIN), sorted(fm.MAX)]},
        "pext": None if fm.p_ext is None else sorted(fm.p_ext),
    }


def load_model(data: dict) -> FixpointModel:
    """Rebuild the universe and take the stored extensions at face value."""
    cfg = dict(data["universe"])
    if data.get("pext") is not None:
        cfg["pext"] = data["pext"]
    u, p_ext = universe_from_config(cfg)
    lo, hi = (frozenset(x) for x in data["extensions"]["Tr"])
    fr = Frame(2, frozenset(tuple(p) for p in data["le"]), tuple(data["star"]))
    preds = {"Tr": (lo, hi)}
    if p_ext is not None:
        preds["P"] = (p_ext, p_ext)
    m = Model(fr, {}, preds, u.domain(), scope=u,
              term_domain=tuple(num_code(d) for d in u.domain()))
    return FixpointModel(u, lo, hi, m, p_ext)


def fixed_point_problems(fm: FixpointModel) -> list[str]:
    """Structural checks on a (possibly loaded) model."""
    u, out = fm.universe, []
    out += fm.model.frame.violations()
    out += fm.model.hereditary_violations()
    if phi_step(u, fm.MIN, fm.p_ext) != fm.MIN:
        out.append("MIN is not a fixed point")
    if phi_step(u, fm.MAX, fm.p_ext) != fm.MAX:
        out.append("MAX is not a fixed point")
    if star(fm.MIN, u) != fm.MAX:
        out.append("star(MIN) differs from MAX")
    return out


__all__ = [
    "Universe", "UniverseError", "OutOfScope", "liar", "truthteller", "build_universe",
    "phi_step", "min_fixed_point", "max_fixed_point", "star", "build_model", "audit_kfl",
    "disquotation_failures", "load_universe", "universe_from_config", "dump_model",
    "load_model", "fixed_point_problems", "random_chain", "FixpointModel", "AuditReport",
]
