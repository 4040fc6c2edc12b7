from __future__ import annotations

import itertools
import random

import pytest

from hypetruth.kernel import Sequent
from hypetruth.parser import parse, parse_sequent
from hypetruth.semantics import (
    Frame, Inconclusive, Model, countermodel, default_pool, extension, force, frames, holds_at,
    models, qn_instances, upsets, valid,
)
from hypetruth.syntax import Atom, Imp, Not, Or, conj, iff

from oracles import classical_models


def S(text: str) -> Sequent:
    return Sequent.of(*parse_sequent(text))


def random_prop(rng, depth=3):
    if depth == 0 or rng.random() < 0.3:
        return Atom(rng.choice("pq"))
    k = rng.randrange(3)
    if k == 0:
        return Not(random_prop(rng, depth - 1))
    if k == 1:
        return Or(random_prop(rng, depth - 1), random_prop(rng, depth - 1))
    return Imp(random_prop(rng, depth - 1), random_prop(rng, depth - 1))


def classical(f, v) -> bool:
    if isinstance(f, Atom):
        return v[f.name]
    if isinstance(f, Not):
        return not classical(f.body, v)
    if isinstance(f, Or):
        return classical(f.left, v) or classical(f.right, v)
    if isinstance(f, Imp):
        return not classical(f.left, v) or classical(f.right, v)
    raise TypeError(f)


def _iso(f1: Frame, f2: Frame) -> bool:
    for pi in itertools.permutations(range(f1.n)):
        if {(pi[a], pi[b]) for a, b in f1.le} == set(f2.le) and all(
                pi[f1.star[w]] == f2.star[pi[w]] for w in range(f1.n)):
            return True
    return False


@pytest.mark.parametrize("n", [1, 2, 3])
def test_frames_cover_every_frame_up_to_isomorphism(n):
    reps = frames(n)
    assert all(fr.violations() == [] for fr in reps)
    assert not any(_iso(a, b) for a, b in itertools.combinations(reps, 2))
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for bits in range(1 << len(pairs)):
        le = frozenset({(i, i) for i in range(n)} | {p for k, p in enumerate(pairs) if bits >> k & 1})
        for star in itertools.permutations(range(n)):
            fr = Frame(n, le, star)
            if not fr.violations():
                assert any(_iso(fr, r) for r in reps)


def test_single_state_classical_agreement():
    fr = Frame(1, frozenset({(0, 0)}), (0,))
    rng = random.Random(1)
    for _ in range(200):
        f = random_prop(rng)
        for v in classical_models(["p", "q"]):
            m = Model(fr, {k: (frozenset({0}) if b else frozenset()) for k, b in v.items()})
            assert force(m, 0, f) == classical(f, v)


def _two_state():
    fr = Frame(2, frozenset({(0, 0), (1, 1)}), (1, 0))
    return Model(fr, {"p": frozenset({1})})


def test_excluded_middle_fails_at_a_gap():
    m = _two_state()
    p = Atom("p")
    assert not force(m, 0, Or(p, Not(p)))


def test_involution_of_negation():
    m = _two_state()
    p = Atom("p")
    for w in range(2):
        assert force(m, w, Not(Not(p))) == force(m, w, p)
        assert force(m, w, iff(Not(Not(p)), p))


def test_countermodels():
    assert countermodel(S("=> p | !p"), 2, 1) is not None
    assert countermodel(S("p & !p =>"), 3, 1) is not None
    assert countermodel(S("=> !!p -> p"), 3, 2) is None


def test_countermodel_bounds():
    with pytest.raises(Inconclusive):
        countermodel(S("=> p | q | r"), 2, 2)


def test_countermodel_is_genuine():
    cm = countermodel(S("=> p | !p"), 3, 1)
    assert not holds_at(cm.model, cm.state, (), (parse("p | !p"),))


def test_qn_axioms_valid():
    pool = default_pool()[:5]
    ms = list(models(2, ["p", "q"]))
    for name, f in qn_instances(pool):
        assert all(valid(m, Sequent((), (f,))) for m in ms), name


def test_persistence_for_all_formulas():
    rng = random.Random(4)
    forms = [random_prop(rng, 3) for _ in range(60)]
    for m in models(3, ["p", "q"]):
        le = m.frame.le
        for f in forms:
            e = extension(m, f)
            assert all(v in e for (w, v) in le if w in e)


def test_upsets_are_hereditary():
    for fr in frames(3):
        for s in upsets(fr):
            assert all(v in s for (w, v) in fr.le if w in s)


def test_non_hereditary_model_detected():
    fr = Frame(2, frozenset({(0, 0), (1, 1), (0, 1)}), (1, 0))
    m = Model(fr, {"p": frozenset({0})})
    assert m.hereditary_violations()


def test_bad_frame_detected():
    fr = Frame(2, frozenset({(0, 0), (1, 1), (0, 1)}), (0, 1))
    assert any("antimonotone" in v for v in fr.violations())
