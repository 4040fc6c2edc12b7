from __future__ import annotations

import random

from hypetruth.coding import (
    decode, encode, is_lt_sentence, num_code, sent, sent_level, tr_depth, value,
)
from hypetruth.ordinals import OMEGA, ONE, ZERO
from hypetruth.pairing import pair, unpair
from hypetruth.parser import parse, parse_term
from hypetruth.syntax import Eq, Not, Num, Tr, Var

from conftest import random_formula, random_term


def test_pairing_is_a_bijection_on_an_initial_segment():
    seen = set()
    for c in range(2000):
        a, b = unpair(c)
        assert pair(a, b) == c
        seen.add((a, b))
    assert len(seen) == 2000


def test_round_trip_random_formulas():
    rng = random.Random(1)
    for _ in range(1000):
        f = random_formula(rng, 4)
        assert decode(encode(f)) == f


def test_round_trip_random_terms():
    rng = random.Random(2)
    for _ in range(500):
        t = random_term(rng, 3)
        assert decode(encode(t)) == t


def test_distinct_trees_get_distinct_codes():
    rng = random.Random(3)
    seen = {}
    for _ in range(2000):
        f = random_formula(rng, 3)
        c = encode(f)
        assert seen.setdefault(c, f) == f


def test_negation_function_on_codes():
    assert value(parse_term("negdot(q(0=0))")) == encode(parse("!(0=0)"))


def test_truth_quotation_function_matches_constructor():
    # independent path: build Tr(n) directly, compare with the syntactic function
    for n in range(10):
        assert value(parse_term(f"trdot(num({n}))")) == encode(Tr(Num(n)))


def test_closed_term_values():
    assert value(parse_term("S(S(0))+S(0)")) == 3
    assert value(parse_term("num(7)")) == num_code(7)


def test_substitution_function_on_codes():
    assert value(parse_term("sub(q(Tr(v0)), q(v0), num(4))")) == encode(Tr(Num(4)))


def test_sentence_predicate():
    assert sent(encode(parse("all v0. v0=v0")))
    assert not sent(encode(parse("v0=v0")))
    assert not sent(encode(parse("0=0 -> 0=0")))
    assert is_lt_sentence(parse("P(0)"))
    assert not is_lt_sentence(parse("P(0)"), allow_p=False)


def test_sentence_levels():
    zz = Eq(Num(0), Num(0))
    assert sent_level(ZERO, encode(zz))
    once = Tr(Num(encode(zz)))
    assert not sent_level(ZERO, encode(once))
    assert sent_level(ONE, encode(once))
    f = zz
    for _ in range(10):
        f = Tr(Num(encode(f)))
        assert sent_level(OMEGA, encode(f))


def test_truth_depth():
    zz = Eq(Num(0), Num(0))
    assert tr_depth(Tr(Num(encode(Tr(Num(encode(zz))))))) == 2
    assert tr_depth(Not(Tr(Var(0)))) is None
