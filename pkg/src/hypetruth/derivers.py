"""Generators emitting kernel-checkable derivations, and jump-formula constructors."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import builder as b
from .kernel import Derivation, Sequent, below, conclude
from .ordcodes import ord_term
from .ordinals import ONE as ORD_ONE, Ord, e_of, h_of, omega_tower, ord_decode
from .pairing import unpair
from .syntax import (
    BOT, ZERO, Abstraction, All, Atom, Bot, Eq, Fa, Fn, Imp, Not, Num, Or, Pr, Tr, Var,
    conj, exists, fresh_var, prec, preceq, succ, substitute,
)

MAX_TOWER = 3


class DeriveError(ValueError):
    pass


# ------------------------------------------------------------------ basic facts


def derive_basic(which: str, arg=None) -> Derivation:
    """top, dn-intro(A), dn-elim(A) or contrapose(derivation)."""
    if which == "top":
        return b.top()
    if which == "dn-intro":
        return b.dn_intro(arg)
    if which == "dn-elim":
        return b.dn_elim(arg)
    if which == "contrapose":
        return b.contrapose(arg)
    raise DeriveError(f"unknown basic derivation {which!r}")


# ------------------------------------------------------------------ excluded middle


def _lem_eq(f: Eq) -> Derivation:
    s, t = f.left, f.right
    rep = b.ax("Rep", [f, Not(f)], [Not(Eq(t, t))])
    refl = conclude("ClCp", [b.ax("Ref", [], [Eq(t, t)])])  # ¬t=t ⇒
    expl = b.cut(rep, refl, Not(Eq(t, t)))  # s=t, ¬s=t ⇒
    return b.cut(conclude("ConCp", [expl]), b.dn_elim(f), Not(Not(f)))


def derive_lem(a) -> Derivation:
    """⇒ A, ¬A for an arithmetical formula without →, by recursion on A."""
    if isinstance(a, Eq):
        return _lem_eq(a)
    if isinstance(a, Bot):
        return b.weaken(b.top(), succ=[BOT])
    if isinstance(a, Not):
        return b.cut(derive_lem(a.body), b.dn_intro(a.body), a.body)
    if isinstance(a, Or):
        l, r = a.left, a.right
        split = b.lor(b.weaken(b.idax(l), succ=[r]), b.weaken(b.idax(r), succ=[l]), a)
        k = b.contrapose(split)  # ¬l, ¬r ⇒ ¬(l ∨ r)
        d = b.cut(derive_lem(l), k, Not(l))
        d = b.cut(derive_lem(r), d, Not(r))
        d = b.weaken_to(d, Sequent((), (l, r, Not(a))))  # l and r may coincide
        return b.ror(d, a)
    if isinstance(a, All):
        y = fresh_var(a)
        inst = substitute(a.body, a.var, Var(y))
        k = b.contrapose(b.lall(b.idax(inst), a, Var(y)))  # ¬A(y) ⇒ ¬∀xA
        return b.rall(b.cut(derive_lem(inst), k, Not(inst)), a, y)
    if isinstance(a, Imp):
        raise DeriveError("excluded middle is only generated for formulas without ->")
    if isinstance(a, (Tr, Fa, Pr, Atom)):
        raise DeriveError("atom not classical-certified")
    raise DeriveError(f"unsupported formula {a!r}")


# ------------------------------------------------------------------ Gentzen jump


def prog(A: Abstraction) -> All:
    """Prog(A) = ∀η(∀ζ≺η A(ζ) → A(η))."""
    h = fresh_var(A.body, A.var)
    return All(h, Imp(below(A, Var(h)), A(Var(h))))


def oadd(s, t):
    return Fn("oadd", (s, t))


def opow(s):
    return Fn("opow", (s,))


def omul(s, n):
    return Fn("omul", (s, n))


def gentzen_jump(A: Abstraction) -> Abstraction:
    """A⁺(θ) = ∀ξ(∀η(η≺ξ→A(η)) → ∀η(η≺ξ+ω^θ→A(η)))."""
    th = fresh_var(A.body, A.var)
    xi = th + 1
    et = th + 2
    inner = All(et, Imp(prec(Var(et), oadd(Var(xi), opow(Var(th)))), A(Var(et))))
    return Abstraction(th, All(xi, Imp(below(A, Var(xi)), inner)))


def mp_all(h: All, t) -> Derivation:
    """∀v(L(v) → R(v)), L(t) ⇒ R(t)."""
    inst = substitute(h.body, h.var, t)
    return b.lall(b.limp(b.idax(inst.left), b.idax(inst.right), inst), h, t)


def _fresh(n: int, *avoid) -> list[int]:
    v = fresh_var(*avoid)
    return list(range(v, v + n))


def derive_prog_jump(A: Abstraction) -> Derivation:
    """Prog(A) ⇒ Prog(A⁺), following the two-case argument."""
    Ap = gentzen_jump(A)
    P, Pp = prog(A), prog(Ap)
    th_i, xi_i, et_i, z_i, n_i, x_i, w_i = _fresh(7, A.body, A.var, Ap.body, Ap.var)
    th, xi, et, Z, N, X, W = (Var(i) for i in (th_i, xi_i, et_i, z_i, n_i, x_i, w_i))
    bound = oadd(xi, opow(th))
    Hxi = below(A, xi)
    below_plus = below(Ap, th)

    # theta = 0: eta < xi, or eta = xi and progressiveness applies
    c1a = mp_all(Hxi, et)  # H(xi), eta<xi ⇒ A(eta)
    rep = b.ax("Rep", [Eq(xi, et), A(xi)], [A(et)])
    c1b = b.cut(mp_all(P, xi), rep, A(xi))  # Prog, H(xi), xi=eta ⇒ A(eta)
    jump0 = b.ax("ord-lemma:jump0", [Eq(th, ZERO), prec(et, bound)], [prec(et, xi), Eq(xi, et)])
    c1 = b.cut(b.cut(jump0, c1a, prec(et, xi)), c1b, Eq(xi, et))

    # theta > 0: Cantor normal form and omega-induction on B(x) = ∀ζ≺ξ+ω^z·x A(ζ)
    B = Abstraction(x_i, below(A, oadd(xi, omul(opow(Z), X)), avoid=(x_i, z_i, n_i, w_i)))
    mul0 = b.ax("ord-lemma:mul0", [prec(W, oadd(xi, omul(opow(Z), ZERO)))], [prec(W, xi)])
    d = b.cut(mul0, mp_all(Hxi, W), prec(W, xi))
    base_inst = substitute(B(ZERO).body, B(ZERO).var, W)
    base = b.rall(b.rimp(d, base_inst), B(ZERO), w_i)  # H(xi) ⇒ B(0)

    ux = oadd(xi, omul(opow(Z), X))
    ApZ = Ap(Z)
    inst = substitute(ApZ.body, ApZ.var, ux)
    eq = Eq(oadd(ux, opow(Z)), oadd(xi, omul(opow(Z), succ(X))))
    mul_s = b.ax("ord-lemma:mulS", [], [eq])
    shift = b.cut(mul_s, b.ax("Rep", [eq, inst.right], [B(succ(X))]), eq)
    step = b.lall(b.limp(b.idax(B(X)), shift, inst), ApZ, ux)  # A⁺(z), B(x) ⇒ B(Sx)
    ind = conclude("IND", [step], B=B, var=x_i, term=N)  # B(0), A⁺(z) ⇒ B(n)
    d = b.cut(base, ind, B(ZERO))
    un = oadd(xi, omul(opow(Z), N))
    d = b.cut(d, mp_all(B(N), et), B(N))
    d = b.cut(mp_all(below_plus, Z), d, ApZ)
    d = b.land(d, prec(Z, th), prec(et, un))
    inner = conj(prec(Z, th), prec(et, un))
    d = b.lex(d, z_i, inner, z_i)
    d = b.lex(d, n_i, exists(z_i, inner), n_i)
    witness = exists(n_i, exists(z_i, inner))
    cnf = b.ax("ord-lemma:cnf", [prec(ZERO, th), prec(et, bound)], [witness])
    c2 = b.cut(cnf, d, witness)

    cases = b.ax("ord-lemma:cases", [prec(et, bound)], [Eq(th, ZERO), prec(ZERO, th)])
    core = b.cut(b.cut(cases, c1, Eq(th, ZERO)), c2, prec(ZERO, th))

    target = Ap(th)
    t1 = substitute(target.body, target.var, xi)
    d = b.rimp(core, Imp(prec(et, bound), A(et)))
    d = b.rall(d, t1.right, et_i)
    d = b.rimp(d, t1)
    d = b.rall(d, target, xi_i)
    pinst = substitute(Pp.body, Pp.var, th)
    d = b.rimp(d, pinst)
    return b.rall(d, Pp, th_i)


def _below_zero(A: Abstraction) -> Derivation:
    """⇒ ∀η≺0 A(η)."""
    h = below(A, ZERO)
    w = fresh_var(h)
    d = b.weaken(b.ax("ord-lemma:zero", [prec(Var(w), ZERO)], []), succ=[A(Var(w))])
    d = b.rimp(d, substitute(h.body, h.var, Var(w)))
    return b.rall(d, h, w)


def tower_term(n: int):
    return ord_term(omega_tower(n))


def ti_sequent(A: Abstraction, n: int):
    return Sequent.of([prog(A)], [below(A, tower_term(n))])


def derive_ti(A: Abstraction, n: int) -> Derivation:
    """Prog(A) ⇒ ∀ξ≺ω_n A(ξ)."""
    if n < 0 or n > MAX_TOWER:
        raise DeriveError(f"tower height {n} outside 0..{MAX_TOWER}")
    P = prog(A)
    if n == 0:
        one = ord_term(ORD_ONE)
        x = fresh_var(P, A.body, A.var)
        X = Var(x)
        d = b.cut(_below_zero(A), mp_all(P, ZERO), below(A, ZERO))  # Prog ⇒ A(0)
        d = b.cut(d, b.ax("Rep", [Eq(ZERO, X), A(ZERO)], [A(X)]), A(ZERO))
        d = b.cut(b.ax("ord-lemma:one", [prec(X, one)], [Eq(ZERO, X)]), d, Eq(ZERO, X))
        target = below(A, one)
        d = b.rimp(d, substitute(target.body, target.var, X))
        return b.rall(d, target, x)
    Ap = gentzen_jump(A)
    alpha = tower_term(n - 1)
    Pp = prog(Ap)
    lower = derive_ti(Ap, n - 1)  # Prog(A⁺) ⇒ ∀ξ≺α A⁺(ξ)
    d = b.contract(b.cut(lower, mp_all(Pp, alpha), below(Ap, alpha)))  # Prog(A⁺) ⇒ A⁺(α)
    d = b.cut(derive_prog_jump(A), d, Pp)  # Prog(A) ⇒ A⁺(α)
    Aa = Ap(alpha)
    inst0 = substitute(Aa.body, Aa.var, ZERO)
    K = inst0.right
    at0 = b.lall(b.limp(_below_zero(A), b.idax(K), inst0), Aa, ZERO)  # A⁺(α) ⇒ K
    top = tower_term(n)
    eq = Eq(oadd(ZERO, opow(alpha)), top)
    target = below(A, top)
    rewrite = b.cut(b.ax("hya-eval", [], [eq]), b.ax("Rep", [eq, K], [target]), eq)
    return b.cut(d, b.cut(at0, rewrite, K), Aa)


# ------------------------------------------------------------------ Veblen jump and f-hierarchy


def jump_formula(B: Abstraction, xi) -> All:
    """J(B, ξ) = ∀η(∀ζ≺η B(ζ) → ∀ζ≺η+ξ B(ζ))."""
    h = fresh_var(B.body, B.var, xi)
    return All(h, Imp(below(B, Var(h)), below(B, oadd(Var(h), xi), avoid=(h,))))


def _stage_default(z):
    u = fresh_var(z)
    return Abstraction(u, Tr(Fn("fh", (z, Var(u)))))


def veblen_jump(xi: Ord, y, stage=None):
    """𝒜(Tr f, ξ, y) = ∀ζ(h(ξ) ≼ ζ ≺ ξ → J(Tr f_ζ, φ_{e(ξ)} y)).

    `stage(ζ)` gives the predicate standing for the ζ-th stage; by default
    it is u ↦ Tr fh(ζ, u)."""
    if not xi:
        raise DeriveError("the Veblen jump needs a positive ordinal")
    stage = stage or _stage_default
    hx, ex, xt = ord_term(h_of(xi)), ord_term(e_of(xi)), ord_term(xi)
    z = fresh_var(y) if not isinstance(y, int) else y + 1
    Zt = Var(z)
    guard = conj(preceq(hx, Zt), prec(Zt, xt))
    return All(z, Imp(guard, jump_formula(stage(Zt), Fn("ophi", (ex, y)))))


def jump_slots(f: All):
    """(h-slot, e-slot) terms of a Veblen-jump formula."""
    guard = f.body.left
    h = guard.body.left.body.left.left.args[0]  # preceq(h, ζ) = prec(h, ζ) ∨ h = ζ
    jf = f.body.right
    e = jf.body.right.body.left.left.args[1].args[1].args[0]
    return h, e


def _restricted_stage(zeta_code: int):
    """u ↦ Tr f^ζ((ζ', u)) with ζ' the bound stage variable."""

    def stage(zt):
        u = fresh_var(zt) + 1
        return Abstraction(u, Tr(Fn("fsup", (Num(zeta_code), Fn("pair", (zt, Var(u)))))))

    return stage


@dataclass(frozen=True)
class FHierarchyCode:
    """f_ζ as a function from x to the code of a sentence."""

    zeta: Ord

    def formula(self, x: int):
        from .syntax import Pr

        if not self.zeta:
            return Pr(Num(x))
        return veblen_jump(self.zeta, Num(x), _restricted_stage(self.code_of_index()))

    def code_of_index(self) -> int:
        from .ordinals import ord_encode

        return ord_encode(self.zeta)

    def code(self, x: int) -> int:
        return _f_code_cached(self.code_of_index(), x)


def build_f(zeta: Ord) -> FHierarchyCode:
    return FHierarchyCode(zeta)


@lru_cache(maxsize=4096)
def _f_code_cached(z: int, x: int) -> int:
    from .coding import encode

    zeta = ord_decode(z)
    if zeta is None:
        return encode(BOT)
    return encode(FHierarchyCode(zeta).formula(x))


def fsup_formula(z: int, x: int):
    """f^ζ((x0, x1)) = ⌜x0 ≺ ζ ∧ Tr f_{x0}(x1)⌝."""
    x0, x1 = unpair(x)
    return conj(prec(Num(x0), Num(z)), Tr(Fn("fh", (Num(x0), Num(x1)))))


def f_code(name: str, z: int, x: int) -> int:
    """Values of the function symbols fh (f_ζ) and fsup (f^ζ) on codes."""
    from .coding import encode

    if name == "fh":
        return _f_code_cached(z, x)
    if name == "fsup":
        return encode(fsup_formula(z, x))
    raise ValueError(f"unknown hierarchy function {name!r}")


__all__ = [
    "DeriveError", "derive_basic", "derive_lem", "prog", "gentzen_jump", "derive_prog_jump",
    "derive_ti", "ti_sequent", "tower_term", "jump_formula", "veblen_jump", "jump_slots",
    "build_f", "FHierarchyCode", "f_code", "fsup_formula", "mp_all",
]
