"""Recursive-descent parser for the ASCII formula grammar.

    formula  := disj ( '->' formula | '<->' disj )?
    disj     := conj ( '|' conj )*
    conj     := unary ( '&' unary )*
    unary    := '!' unary | 'all' VAR '.' unary | 'ex' VAR '.' unary
              | 'bot' | 'top' | 'Tr(' term ')' | 'F(' term ')' | 'P(' term ')'
              | ATOM | '(' formula ')' | term ('=' | '!=' | '<') term
    term     := prod ( '+' prod )*
    prod     := prim ( '*' prim )*
    prim     := NUMBER | VAR | '?'NAME | 'S(' term ')' | 'q(' formula|term ')'
              | FN '(' term, ... ')' | '(' term ')'

Variables are written v0, v1, ...; x, y, z, u, w abbreviate v0 .. v4.
Any other lowercase identifier not followed by '(' is a propositional atom.
Unicode forms of the connectives are accepted as well.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    All, Atom, BOT, Eq, Fa, Fn, FUNCTION_ARITY, Imp, Lang, Meta, Not, Num, Or,
    Plus, Pr, Times, Tr, Var, conj, exists, iff, language_violations, neq, prec,
    succ, top,
)

VAR_ALIASES = {"x": 0, "y": 1, "z": 2, "u": 3, "w": 4}
_KEYWORDS = {"all", "ex", "bot", "top"}

_UNICODE = [
    ("⇒", "=>"), ("↔", "<->"), ("→", "->"), ("¬", "!"), ("∨", "|"), ("∧", "&"),
    ("∀", "all "), ("∃", "ex "), ("⊥", "bot"), ("⊤", "top"), ("≺", "<"), ("≠", "!="),
]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<meta>\?[A-Za-z_][A-Za-z0-9_]*)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op><->|->|=>|!=|[()!|&=<+*,.]))"
)


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int, text: str):
        super().__init__(f"{msg} at position {pos}: {text[:pos]}<HERE>{text[pos:]}")
        self.pos = pos


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected character", pos, text)
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        for a, b in _UNICODE:
            text = text.replace(a, b)
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    # -- helpers
    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind != "eof"

    def expect(self, text: str) -> _Tok:
        if not self.at(text):
            self.fail(f"expected {text!r}")
        t = self.tok
        self.i += 1
        return t

    def fail(self, msg: str):
        raise ParseError(msg, self.tok.pos, self.text)

    # -- formulas
    def formula(self):
        left = self.disj()
        if self.at("->"):
            self.i += 1
            return Imp(left, self.formula())
        if self.at("<->"):
            self.i += 1
            return iff(left, self.disj())
        return left

    def disj(self):
        f = self.conj()
        while self.at("|"):
            self.i += 1
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.unary()
        while self.at("&"):
            self.i += 1
            f = conj(f, self.unary())
        return f

    def variable(self) -> int:
        t = self.tok
        if t.kind == "id":
            if t.text in VAR_ALIASES:
                self.i += 1
                return VAR_ALIASES[t.text]
            if re.fullmatch(r"v\d+", t.text):
                self.i += 1
                return int(t.text[1:])
        self.fail("expected a variable")

    def unary(self):
        t = self.tok
        if t.text == "!" and t.kind == "op":
            self.i += 1
            return Not(self.unary())
        if t.kind == "id" and t.text in ("all", "ex"):
            self.i += 1
            v = self.variable()
            self.expect(".")
            body = self.unary()
            return All(v, body) if t.text == "all" else exists(v, body)
        if t.kind == "id" and t.text == "bot":
            self.i += 1
            return BOT
        if t.kind == "id" and t.text == "top":
            self.i += 1
            return top()
        if t.kind == "id" and t.text in ("Tr", "F", "P") and self.peek().text == "(":
            self.i += 2
            arg = self.term()
            self.expect(")")
            return {"Tr": Tr, "F": Fa, "P": Pr}[t.text](arg)
        if t.kind == "id" and self._is_atom_name(t.text) and self.peek().text != "(":
            self.i += 1
            return Atom(t.text)
        if t.text == "(":
            save = self.i
            try:
                self.i += 1
                f = self.formula()
                self.expect(")")
                if self.tok.text not in ("=", "!=", "<", "+", "*"):
                    return f
            except ParseError:
                pass
            self.i = save
        return self.relation()

    def _is_atom_name(self, name: str) -> bool:
        if name in _KEYWORDS or name in VAR_ALIASES or re.fullmatch(r"v\d+", name):
            return False
        if name in FUNCTION_ARITY or name in ("S", "Tr", "F", "P"):
            return False
        return name[0].islower()

    def relation(self):
        left = self.term()
        op = self.tok.text
        if op not in ("=", "!=", "<"):
            self.fail("expected '=', '!=' or '<'")
        self.i += 1
        right = self.term()
        if op == "=":
            return Eq(left, right)
        if op == "!=":
            return neq(left, right)
        return prec(left, right)

    # -- terms
    def term(self):
        t = self.prod()
        while self.at("+"):
            self.i += 1
            t = Plus(t, self.prod())
        return t

    def prod(self):
        t = self.prim()
        while self.at("*"):
            self.i += 1
            t = Times(t, self.prim())
        return t

    def prim(self):
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return Num(int(t.text))
        if t.kind == "meta":
            self.i += 1
            return Meta(t.text[1:])
        if t.text == "(":
            self.i += 1
            inner = self.term()
            self.expect(")")
            return inner
        if t.kind == "id":
            if self.peek().text == "(":
                name = t.text
                self.i += 2
                if name == "S":
                    arg = self.term()
                    self.expect(")")
                    return succ(arg)
                if name == "q":
                    return self.quote()
                if name not in FUNCTION_ARITY:
                    self.fail(f"unknown function symbol {name!r}")
                args = [self.term()]
                while self.at(","):
                    self.i += 1
                    args.append(self.term())
                self.expect(")")
                try:
                    return Fn(name, tuple(args))
                except ValueError as exc:
                    self.fail(str(exc))
            return Var(self.variable())
        self.fail("expected a term")

    def quote(self):
        from .coding import encode

        save = self.i
        try:
            inner = self.formula()
            self.expect(")")
        except ParseError:
            self.i = save
            inner = self.term()
            self.expect(")")
        return Num(encode(inner))

    def done(self):
        if self.tok.kind != "eof":
            self.fail("trailing input")


def _check_lang(f, lang, p: _Parser):
    if lang is None:
        return
    problems = language_violations(f, lang)
    if problems:
        raise ParseError(problems[0], 0, p.text)


def parse(text: str, lang: Lang | str | None = None):
    """Parse a formula; with `lang`, also enforce the language tag."""
    if isinstance(lang, str):
        lang = Lang.parse(lang)
    p = _Parser(text)
    f = p.formula()
    p.done()
    _check_lang(f, lang, p)
    return f


def parse_term(text: str):
    p = _Parser(text)
    t = p.term()
    p.done()
    return t


def parse_sequent(text: str, lang: Lang | str | None = None):
    """Parse `A, B => C, D` into (antecedent, succedent) tuples."""
    if isinstance(lang, str):
        lang = Lang.parse(lang)
    p = _Parser(text)
    sides = ([], [])
    side = 0
    while True:
        if p.at("=>"):
            if side == 1:
                p.fail("second '=>'")
            side = 1
            p.i += 1
            continue
        if p.tok.kind == "eof":
            break
        f = p.formula()
        _check_lang(f, lang, p)
        sides[side].append(f)
        if p.at(","):
            p.i += 1
        elif not p.at("=>") and p.tok.kind != "eof":
            p.fail("expected ',' or '=>'")
    if side == 0:
        p.fail("missing '=>'")
    return tuple(sides[0]), tuple(sides[1])
