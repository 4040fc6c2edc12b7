from __future__ import annotations

import random
from pathlib import Path

import pytest

from hypetruth.syntax import All, Bot, Eq, Fn, Not, Num, Or, Plus, Times, Tr, Var, succ

ROOT = Path(__file__).resolve().parent.parent


def random_term(rng: random.Random, depth: int = 2, closed: bool = False):
    if depth == 0 or rng.random() < 0.3:
        if closed or rng.random() < 0.5:
            return Num(rng.randrange(6))
        return Var(rng.randrange(3))
    k = rng.randrange(4)
    if k == 0:
        return succ(random_term(rng, depth - 1, closed))
    if k == 1:
        return Plus(random_term(rng, depth - 1, closed), random_term(rng, depth - 1, closed))
    if k == 2:
        return Times(random_term(rng, depth - 1, closed), random_term(rng, depth - 1, closed))
    return Fn("num", (random_term(rng, depth - 1, closed),))


def random_formula(rng: random.Random, depth: int = 3, truth: bool = True, closed: bool = False):
    """Random formula without the conditional; variables v0..v2 when open."""
    if depth == 0 or rng.random() < 0.25:
        if truth and rng.random() < 0.3:
            return Tr(random_term(rng, 1, closed))
        if rng.random() < 0.1:
            return Bot()
        return Eq(random_term(rng, 1, closed), random_term(rng, 1, closed))
    k = rng.randrange(3)
    if k == 0:
        return Not(random_formula(rng, depth - 1, truth, closed))
    if k == 1:
        return Or(random_formula(rng, depth - 1, truth, closed),
                  random_formula(rng, depth - 1, truth, closed))
    v = rng.randrange(3)
    body = random_formula(rng, depth - 1, truth, False)
    return All(v, body)


@pytest.fixture(scope="session")
def liar_model():
    from hypetruth.fixpoint import build_model, load_universe

    u, p_ext = load_universe(ROOT / "universes" / "liar.toml")
    return build_model(u, p_ext)


# one line per acceptance criterion, shown at the end of every run
CRITERIA: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA):
            terminalreporter.write_line(line)
