from __future__ import annotations

import json
import random

import pytest

from hypetruth.coding import encode
from hypetruth.derivers import derive_lem
from hypetruth.fixpoint import (
    UniverseError, audit_kfl, build_model, build_universe, disquotation_failures, dump_model,
    fixed_point_problems, liar, load_model, max_fixed_point, min_fixed_point, phi_step,
    random_chain, star, truthteller,
)
from hypetruth.kernel import check
from hypetruth.parser import parse
from hypetruth.semantics import holds_at
from hypetruth.syntax import Not, Num, Pr, Tr, iff

from oracles import fde_fixed_point


def q(f):
    return Tr(Num(encode(f)))


def test_quotation_closure():
    zz = parse("0=0")
    u = build_universe([zz], 3)
    f = zz
    for _ in range(3):
        f = q(f)
        assert f in u and Not(f) in u
    assert q(f) not in u


def test_diagonal_sentences_present():
    u = build_universe([], 1, liar_flag=True)
    assert liar() in u and Not(liar()) in u


def test_diagonal_sentences_are_fixed_points():
    from hypetruth.coding import value

    L, T = liar(), truthteller()
    assert value(L.body.arg) == encode(L)
    assert value(T.arg) == encode(T)


def test_size_grows_with_depth():
    sizes = [len(build_universe([parse("0=0 | 0=1")], d, liar_flag=True)) for d in range(5)]
    assert sizes == sorted(sizes) and sizes[0] < sizes[-1]


def test_size_cap():
    with pytest.raises(UniverseError):
        build_universe([parse("0=0")], 30, cap=50)


def test_non_sentence_seed_rejected():
    with pytest.raises(UniverseError):
        build_universe([parse("v0=0")], 1)


def test_atomic_clauses_on_empty_stage():
    u = build_universe([parse("0=0"), parse("0=1")], 1)
    x = phi_step(u, frozenset())
    assert encode(parse("0=0")) in x and encode(parse("!(0=1)")) in x
    assert encode(parse("0=1")) not in x


def test_operator_monotone_on_random_chains():
    u = build_universe([parse("0=1 | Tr(q(0=0))"), parse("all v0. v0=v0")], 3, True, True)
    rng = random.Random(6)
    for _ in range(30):
        chain = random_chain(u, rng, 3)
        images = [phi_step(u, x) for x in chain]
        assert all(a <= b for a, b in zip(images, images[1:]))


def test_schematic_predicate_clause():
    u = build_universe([Pr(Num(2)), Pr(Num(3))], 0, allow_p=True)
    x1 = phi_step(u, frozenset(), {2})
    assert encode(Pr(Num(2))) in x1 and encode(Pr(Num(3))) not in x1
    assert encode(Pr(Num(3))) not in min_fixed_point(u, {2})


def test_closure_violation_detected():
    u = build_universe([parse("0=0")], 0)
    with pytest.raises(UniverseError):
        phi_step(u, {encode(parse("0=1"))})


def test_liar_gaps_and_gluts(liar_model):
    fm = liar_model
    L = encode(liar())
    nL = encode(Not(liar()))
    assert L not in fm.MIN and nL not in fm.MIN
    assert L in fm.MAX and nL in fm.MAX
    assert fm.MIN <= fm.MAX


def test_star_maps_fixed_points(liar_model):
    fm, u = liar_model, liar_model.universe
    assert star(fm.MIN, u) == fm.MAX
    assert star(fm.MAX, u) == fm.MIN
    assert star(star(fm.MIN, u), u) == fm.MIN


@pytest.mark.parametrize("seeds,depth,bound", [
    (["0=0"], 3, 2),
    (["0=1 | Tr(q(0=0))", "all v0. v0=v0", "!all v0. v0=0"], 2, 3),
])
def test_fixed_points_match_four_valued_oracle(seeds, depth, bound):
    u = build_universe([parse(s) for s in seeds], depth, True, True, bound=bound)
    assert min_fixed_point(u) == fde_fixed_point(u)
    assert max_fixed_point(u) == fde_fixed_point(u, start=True)


def test_schematic_fixed_point_matches_oracle():
    pe = frozenset(range(0, 21, 2))
    u = build_universe([parse("all v0. (P(v0) | !P(v0))")], 2, True, bound=4, p_atoms=23)
    assert min_fixed_point(u, pe) == fde_fixed_point(u, pe)


def test_audit_clean_and_disquotation(liar_model):
    rep = audit_kfl(liar_model)
    assert rep.ok, rep.violations[:3]
    assert rep.checked > 1000
    assert disquotation_failures(liar_model) == []


def test_truth_of_schematic_atoms():
    pe = frozenset(range(0, 21, 2))
    u = build_universe([], 1, bound=3, p_atoms=23)
    fm = build_model(u, pe)
    for n in range(23):
        f = iff(q(Pr(Num(n))), Pr(Num(n)))
        assert all(holds_at(fm.model, w, (), (f,)) for w in (0, 1))
    rep = audit_kfl(fm)
    assert rep.ok and rep.by_schema["KFL-P"] == 23


def test_audit_detects_a_broken_model(liar_model):
    fm = liar_model
    broken = build_model(fm.universe)
    lo = set(broken.MIN)
    lo.discard(encode(parse("0=0")))
    broken.model.preds["Tr"] = (frozenset(lo), broken.MAX)
    rep = audit_kfl(broken)
    assert not rep.ok


def test_kernel_theorems_forced(liar_model):
    fm = liar_model
    for f in fm.universe.sentences[:200]:
        try:
            d = derive_lem(f)
        except Exception:
            continue
        assert check(d, "KFL").ok
        c = d.conclusion
        assert all(holds_at(fm.model, w, c.ante, c.succ) for w in (0, 1))


def test_dump_and_load(liar_model, tmp_path):
    data = json.loads(json.dumps(dump_model(liar_model)))
    assert data["extensions"]["Tr"][0] == sorted(liar_model.MIN)
    fm = load_model(data)
    assert fm.MIN == liar_model.MIN and fixed_point_problems(fm) == []
    data["extensions"]["Tr"][0] = data["extensions"]["Tr"][0][1:]
    assert fixed_point_problems(load_model(data))
