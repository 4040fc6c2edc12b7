"""Line-oriented proof scripts.

    # comment
    theory: G1h
    hyp: A, B => C
    1: p => p ; axiom:ID
    2: !p => !p ; axiom:ID
    3: p => !!p ; ConCp 2
    4: q, p => p ; LW[A:q] 1

Each step is `n: <sequent> ; <rule>[key:value;...] <premise numbers>`.
Parameter values are formulas (A), terms (term, alpha), variables (var),
abstractions written `v3. <formula>` (B) or sequent sides `=> a, b` (delta).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .kernel import Derivation, Sequent, _walk
from .parser import ParseError, parse, parse_sequent, parse_term
from .printer import show
from .syntax import Abstraction, Var

FORMULA_KEYS = ("A",)
TERM_KEYS = ("term", "alpha")


class ScriptError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        super().__init__(f"line {line}: {msg}" if line is not None else msg)
        self.line = line


@dataclass
class Script:
    root: Derivation
    theory: str | None = None
    hypotheses: list = field(default_factory=list)


_STEP = re.compile(r"^\s*(\d+)\s*:\s*(.*?)\s*;\s*([^\s\[]+)\s*(?:\[(.*)\])?\s*([\d\s,]*)$")


def _var(text: str) -> int:
    t = parse_term(text)
    if not isinstance(t, Var):
        raise ValueError(f"not a variable: {text!r}")
    return t.index


def _params(text: str | None) -> dict:
    out: dict = {}
    if not text:
        return out
    for item in text.split(";"):
        if not item.strip():
            continue
        key, _, val = item.partition(":")
        key, val = key.strip(), val.strip()
        if key in FORMULA_KEYS:
            out[key] = parse(val)
        elif key in TERM_KEYS:
            out[key] = parse_term(val)
        elif key == "var":
            out[key] = _var(val)
        elif key == "B":
            head, _, body = val.partition(".")
            out[key] = Abstraction(_var(head), parse(body))
        elif key == "delta":
            out[key] = parse_sequent(val)[1]
        elif key == "schema":
            out[key] = val
        else:
            raise ValueError(f"unknown parameter {key!r}")
    return out


def read_script(text: str) -> Script:
    nodes: dict[int, Derivation] = {}
    last = None
    thy = None
    hyps = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("theory:"):
                thy = line.split(":", 1)[1].strip()
                continue
            if line.startswith("hyp:"):
                hyps.append(Sequent.of(*parse_sequent(line.split(":", 1)[1])))
                continue
            m = _STEP.match(line)
            if not m:
                raise ValueError("expected `n: <sequent> ; <rule> <premises>`")
            n, seq, rule, params, prem = m.groups()
            n = int(n)
            if n in nodes:
                raise ValueError(f"step {n} defined twice")
            concl = Sequent.of(*parse_sequent(seq))
            ps = _params(params)
            premises = []
            for k in re.split(r"[\s,]+", prem.strip()) if prem.strip() else []:
                if int(k) not in nodes:
                    raise ValueError(f"premise {k} is not an earlier step")
                premises.append(nodes[int(k)])
            if rule.startswith("axiom:"):
                ps["schema"] = rule.split(":", 1)[1]
                rule = "axiom"
            nodes[n] = Derivation(concl, rule, tuple(premises), ps)
            last = n
        except (ValueError, ParseError) as exc:
            raise ScriptError(str(exc), no) from None
    if last is None:
        raise ScriptError("empty script")
    return Script(nodes[last], thy, hyps)


def _fmt_params(params: dict) -> str:
    items = []
    for k, v in params.items():
        if k == "schema":
            continue
        if k == "var":
            s = f"v{v}"
        elif k == "B":
            s = f"v{v.var}. {show(v.body)}"
        elif k == "delta":
            if not v:
                continue
            s = "=> " + ", ".join(show(f) for f in v)
        elif k == "alpha":
            from .kernel import _ordinal_term

            s = str(_ordinal_term(v))
        elif k in TERM_KEYS:
            s = str(v)
        else:
            s = show(v)
        items.append(f"{k}:{s}")
    return f"[{'; '.join(items)}]" if items else ""


def write_script(d: Derivation, theory: str | None = None, hypotheses=(), header=()) -> str:
    out = [f"# {h}" for h in header]
    if theory:
        out.append(f"theory: {theory}")
    for h in hypotheses:
        out.append(f"hyp: {h}")
    num: dict[int, int] = {}
    for i, node in enumerate(_walk(d), 1):
        num[id(node)] = i
        rule = f"axiom:{node.params['schema']}" if node.rule == "axiom" else node.rule
        prem = " ".join(str(num[id(p)]) for p in node.premises)
        out.append(f"{i}: {node.conclusion} ; {rule}{_fmt_params(node.params)} {prem}".rstrip())
    return "\n".join(out) + "\n"


def load(path) -> Script:
    with open(path, encoding="utf-8") as fh:
        return read_script(fh.read())
