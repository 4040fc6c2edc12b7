from __future__ import annotations

import pytest

from hypetruth import builder as b
from hypetruth.axioms import is_axiom, schema_ids
from hypetruth.derivers import derive_lem
from hypetruth.kernel import Derivation, RuleError, Sequent, apply_rule, check, conclude, hyp
from hypetruth.parser import parse, parse_sequent
from hypetruth.script import load, read_script, write_script
from hypetruth.syntax import Abstraction, All, Eq, Not, Num, Or, Pr, Tr, Var

from conftest import ROOT

PROOFS = sorted((ROOT / "proofs").glob("*.kfl"))


def S(text: str) -> Sequent:
    return Sequent.of(*parse_sequent(text))


@pytest.mark.parametrize("path", PROOFS, ids=lambda p: p.stem)
def test_stored_trees_check(path):
    sc = load(path)
    rep = check(sc.root, sc.theory, sc.hypotheses)
    assert rep.ok, rep.failure


@pytest.mark.parametrize("path", PROOFS, ids=lambda p: p.stem)
def test_stored_trees_round_trip(path):
    sc = load(path)
    again = read_script(write_script(sc.root, sc.theory, sc.hypotheses))
    assert check(again.root, again.theory, again.hypotheses).ok
    assert again.root.conclusion == sc.root.conclusion


def test_contraposition_node_with_swapped_sequents_is_rejected():
    text = (ROOT / "proofs" / "imp_explosion.kfl").read_text()
    bad = text.replace("4: !(p -> q) => p ; ClCp 3", "4: !p => p -> q ; ClCp 3")
    assert bad != text
    sc = read_script(bad)
    rep = check(sc.root, sc.theory, sc.hypotheses)
    assert not rep.ok and rep.failure.rule == "ClCp"
    text = (ROOT / "proofs" / "dn_intro.kfl").read_text()
    sc = read_script(text.replace("2: p => !!p ; ConCp 1", "2: !p => !p ; ConCp 1"))
    rep = check(sc.root, sc.theory)
    assert not rep.ok and rep.failure.rule == "ConCp"


def test_undeclared_hypothesis_rejected():
    text = (ROOT / "proofs" / "imp_recapture.kfl").read_text()
    sc = read_script(text.replace("hyp: r, p => q\n", ""))
    assert not check(sc.root, sc.theory, sc.hypotheses).ok


def test_constructive_contraposition_rule():
    out = apply_rule("ConCp", {}, [S("p, q => !r, !s")])
    assert out == S("r, s => !p, !q")


def test_classical_contraposition_rule():
    assert apply_rule("ClCp", {}, [S("!p => q")]) == S("!q => p")


def test_cut_rule():
    out = apply_rule("Cut", {"A": parse("a")}, [S("g => d, a"), S("a, g => d")])
    assert out == S("g => d")
    with pytest.raises(RuleError):
        apply_rule("Cut", {"A": parse("a")}, [S("g => d, a"), S("a, h => d")])


def test_eigenvariable_condition():
    a = parse("all v0. v0=v0")
    assert apply_rule("RAll", {"A": a, "var": 1}, [S("=> v1=v1")]) == S("=> all v0. v0=v0")
    with pytest.raises(RuleError):
        apply_rule("RAll", {"A": a, "var": 1}, [S("v1=0 => v1=v1")])


def test_right_conditional_needs_single_succedent():
    with pytest.raises(RuleError):
        apply_rule("RImp", {"A": parse("p -> q")}, [S("p => q, r")])
    out = apply_rule("RImp", {"A": parse("p -> q"), "delta": (parse("r"),)}, [S("p => q")])
    assert out == S("=> p -> q, r")


def test_truth_axiom_recognizers():
    assert is_axiom(S("sent(v0)=1 => Tr(negdot(v0)) <-> !Tr(v0)"), "KFL3")
    assert is_axiom(S("Tr(v0) => sent(v0)=1"), "KFL6")
    quoted = parse("0=0 -> 0=0")
    from hypetruth.coding import encode

    disq = Sequent.of([], [parse(f"Tr({encode(quoted)}) <-> (0=0 -> 0=0)")])
    assert not any(is_axiom(disq, s) for s in schema_ids())


def test_multiset_equality_of_sequents():
    assert S("p, q => r") == S("q, p => r")
    assert S("p, p => r") != S("p => r")


def test_height_and_size_are_reported():
    d = b.dn_intro(parse("p"))
    rep = check(d, "G1h")
    assert rep.ok and rep.height == 1 and rep.nodes == 2


def test_theory_restricts_schemas():
    d = b.ax("Ref", [], [parse("0=0")])
    assert check(d, "G1h=").ok
    assert not check(d, "G1h").ok


def test_language_restriction_of_theory():
    d = b.idax(parse("F(0)"))
    assert not check(d, "KFL").ok


def _classicality(body_text: str) -> Derivation:
    """=> all v0. (B(v0) | !B(v0)) for an arithmetical B."""
    body = parse(body_text)
    d = b.ror(derive_lem(body), Or(body, Not(body)))
    return b.rall(d, All(0, Or(body, Not(body))), 0)


def test_substitution_rule_accepted():
    B = Abstraction(0, parse("v0=0"))
    main = b.idax(Pr(Num(0)))  # P(0) => P(0)
    d = conclude("Subst", [_classicality("v0=0"), main], B=B)
    assert d.conclusion == S("0=0 => 0=0")
    assert check(d, "KFL*").ok


def test_substitution_rule_side_condition():
    B = Abstraction(0, parse("v0=0"))
    main = b.weaken(b.idax(Pr(Num(0))), [Tr(Num(0))])  # Tr(0), P(0) => P(0)
    with pytest.raises(RuleError):
        conclude("Subst", [_classicality("v0=0"), main], B=B)
    forged = Derivation(S("Tr(0), 0=0 => 0=0"), "Subst", (_classicality("v0=0"), main), {"B": B})
    rep = check(forged, "KFL*")
    assert not rep.ok and "side condition" in rep.failure.message


def test_hypothesis_leaves():
    h = hyp([parse("p")], [parse("q")])
    assert check(h, "G1h", [S("p => q")]).ok
    assert not check(h, "G1h").ok


def test_kernel_is_deterministic():
    sc = load(ROOT / "proofs" / "identity_lem.kfl")
    r1 = check(sc.root, sc.theory)
    r2 = check(sc.root, sc.theory)
    assert r1.lines() == r2.lines()
