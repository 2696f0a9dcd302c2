"""Named theorems: modal logic, intensionalism, classes, descriptions."""
from __future__ import annotations

from .. import definitions as D
from ..extensions import d_iota_1
from ..kernel import choice, potential_infinity
from ..kernel import intensionality
from ..terms import E, T, Abs, App, Con, Iota, Term, Var, Variable, fun, pred
from . import logic as L
from .numerals import nat_by_closure

p_, q_ = Variable("p", T), Variable("q", T)
P, Q = Var(p_), Var(q_)
TOP = D.TOP()
BOT = D.BOT()


# ---------------------------------------------------------------- classical propositional logic

def peirce() -> L.Derivation:
    """⊢ ∀p q.(((p → q) → p) → p)."""
    pq = D.imp(P, Q)
    h = D.imp(pq, P)
    np_ = D.neg(P)
    gamma = (h, np_)
    # from ¬p derive p → q, hence p, contradiction
    hp = L.assume(gamma + (P,), P)
    bot = L.neg_elim(hp, L.assume(gamma + (P,), np_))
    imp = L.cp(L.ex_falso(bot, Q), P)
    got_p = L.mp(imp, L.assume(gamma, h))
    done = L.by_contradiction(L.neg_elim(got_p, L.assume(gamma, np_)), np_)
    return L.forall_intros(L.cp(done, h), p_, q_)


def double_negation() -> L.Derivation:
    """⊢ ∀p.(¬¬p → p)."""
    nnp = D.neg(D.neg(P))
    return L.forall_intro(L.cp(L.double_neg_elim(L.hypothesis((), nnp)), nnp), p_)


# ---------------------------------------------------------------- modal logic

def s4_k() -> L.Derivation:
    """⊢ ∀p q.(□(p → q) → □p → □q)."""
    a, b = D.box(D.imp(P, Q)), D.box(P)
    k = L.k_rule(L.assume((a, b), a), L.assume((a, b), b))
    return L.forall_intros(L.cp(L.cp(k, b), a), p_, q_)


def s4_t() -> L.Derivation:
    """⊢ ∀p.(□p → p)."""
    a = D.box(P)
    return L.forall_intro(L.cp(L.box_elim(L.hypothesis((), a)), a), p_)


def s4_4() -> L.Derivation:
    """⊢ ∀p.(□p → □□p)."""
    a = D.box(P)
    refl = L.eq_refl(TOP)  # ⊢ ⊤ = ⊤
    base = L.necessitation(refl)  # ⊢ ⊤ = (⊤ = ⊤)
    x = Variable("x", T)
    h = L.hypothesis((), a)
    got = L.rewrite(L.conv(h, D.eq(TOP, P)), L.weaken_to(base, (a,)), x, D.eq(TOP, D.eq(TOP, Var(x))))
    return L.forall_intro(L.cp(L.conv(got, D.box(D.box(P))), a), p_)


def necessitation_of(d: L.Derivation) -> L.Derivation:
    return L.necessitation(d)


def top_neq_bot() -> L.Derivation:
    """⊢ ⊤ ≠ ⊥."""
    e = D.eq(TOP, BOT)
    x = Variable("x", T)
    h = L.hypothesis((), e)
    bot = L.rewrite(h, L.top_in((e,)), x, Var(x))
    return L.conv(L.neg_intro(bot, e), D.neq(TOP, BOT))


def separator(z: Variable, a: Term, not_a: Term, a_first: bool = False) -> tuple[Term, L.Derivation]:
    """Relation R = λz q.((¬A → q = ⊥) ∧ (A → q = ⊤)) and ⊢ ∀z.∃q.R z q.

    ``not_a`` is the displayed form of the negation (β-equal to ¬A).
    """
    q = Variable("q", T)
    qv = Var(q)
    neg_part = D.imp(not_a, D.eq(qv, BOT))
    pos_part = D.imp(a, D.eq(qv, TOP))
    body = D.conj(pos_part, neg_part) if a_first else D.conj(neg_part, pos_part)
    rel = Abs(z, Abs(q, body))

    def at(val: Term, gamma, a_holds: bool) -> L.Derivation:
        nd = D.imp(not_a, D.eq(val, BOT))
        pd = D.imp(a, D.eq(val, TOP))
        if a_holds:
            hn = L.conv(L.assume(gamma + (not_a,), not_a), D.neg(a))
            bot = L.neg_elim(L.assume(gamma + (not_a,), a), hn)
            n = L.cp(L.ex_falso(bot, D.eq(val, BOT)), not_a)
            pz = L.cp(L.weaken_to(L.eq_refl(TOP), gamma + (a,)), a)
        else:
            n = L.cp(L.weaken_to(L.eq_refl(BOT), gamma + (not_a,)), not_a)
            bot = L.neg_elim(L.assume(gamma + (a,), a), L.assume(gamma + (a,), D.neg(a)))
            pz = L.cp(L.ex_falso(bot, D.eq(val, TOP)), a)
        n, pz = L.adapt(n, gamma), L.adapt(pz, gamma)
        both = L.and_intro(pz, n) if a_first else L.and_intro(n, pz)
        return L.exists_intro(L.conv(both, (D.conj(pd, nd) if a_first else D.conj(nd, pd))),
                              q, App(App(rel, Var(z)), qv), val)

    pos = at(TOP, (a,), True)
    neg = at(BOT, (D.neg(a),), False)
    total = L.cases(a, pos, neg)
    return rel, L.forall_intro(total, z)


def _choose(rel: Term, total: L.Derivation, letter: str, fty) -> tuple[Variable, L.Derivation]:
    f = L.fresh(letter, fty, total, rel)
    return f, choice(total, f)


def _spec_at(d_all: L.Derivation, rel: Term, f: Variable, z: Term) -> L.Derivation:
    """Γ ⊢ ∀z.R z (f z) gives Γ ⊢ the conjunction R z (f z), β-reduced."""
    inst = L.forall_elim(d_all, z)
    body = rel.instantiate(z).instantiate(App(Var(f), z))
    return L.conv(inst, body)


def s5_axiom() -> L.Derivation:
    """⊢ ∀p.(¬□p → □¬□p), through Choice."""
    z = Variable("p", T)
    a = D.eq(Var(z), TOP)
    rel, total = separator(z, a, D.neq(Var(z), TOP))
    f, ex = _choose(rel, total, "f", fun(T, T))
    fv = Var(f)
    spec = App(D.FORALL(T), Abs(z, App(App(rel, Var(z)), App(fv, Var(z)))))
    nbp = D.neg(D.box(P))
    gamma = (spec, nbp)
    hs = L.assume(gamma, spec)
    # f⊤ = ⊤
    at_top = _spec_at(hs, rel, f, TOP)
    f_top = L.mp(L.weaken_to(L.eq_refl(TOP), gamma), L.and_elim_r(at_top))
    # f p = ⊥, since p ≠ ⊤
    at_p = _spec_at(hs, rel, f, P)
    p_neq = L.conv(_flip_neq_box(L.assume(gamma, nbp)), D.neq(P, TOP))
    f_p = L.mp(p_neq, L.and_elim_l(at_p))
    goal = _box_distinct(f, TOP, P, f_top, f_p, D.eq(TOP, P))
    goal = L.conv(goal, D.box(D.neg(D.box(P))))
    body = L.forall_intro(L.cp(goal, nbp), p_)
    return L.exists_elim(ex, body, spec, f)


def _flip_neq_box(d: L.Derivation) -> L.Derivation:
    """Γ ⊢ ¬(⊤ = p) gives Γ ⊢ ¬(p = ⊤)."""
    e = D.eq(P, TOP)
    h = L.assume(d.assumptions, e)
    bot = L.neg_elim(L.eq_sym(h), L.conv(d, D.neg(D.eq(TOP, P))))
    return L.neg_intro(bot, e)


def _box_distinct(f: Variable, u: Term, v: Term, fu_top: L.Derivation, fv_bot: L.Derivation, ident: Term) -> L.Derivation:
    """From Γ ⊢ f u = ⊤ and Γ ⊢ f v = ⊥ conclude Γ ⊢ □¬(u = v)."""
    fu, fv = App(Var(f), u), App(Var(f), v)
    gamma = L.union(fu_top.assumptions, fv_bot.assumptions)
    # ⊢ □(⊤ ≠ ⊥), rewritten to □(f u ≠ f v)
    nec = L.weaken_to(L.necessitation(top_neq_bot()), gamma)
    x = Variable("x", T)
    step = L.rewrite(L.eq_sym(fu_top), nec, x, D.box(D.neq(Var(x), BOT)))
    step = L.rewrite(L.eq_sym(fv_bot), step, x, D.box(D.neq(fu, Var(x))))
    # ⊢ f u ≠ f v → ¬(u = v), necessitated
    h1, h2 = D.neq(fu, fv), ident
    cong = L.congruence(L.assume((h1, h2), h2), Var(f))
    bot = L.neg_elim(cong, L.conv(L.assume((h1, h2), h1), D.neg(D.eq(fu, fv))))
    contra = L.cp(L.neg_intro(bot, h2), h1)
    k = L.k_rule(L.weaken_to(L.necessitation(contra), gamma), step)
    return k


def nec_identity(sigma=E) -> L.Derivation:
    """⊢ ∀x y.(x = y → □(x = y))."""
    x, y = Variable("x", sigma), Variable("y", sigma)
    h = D.eq(Var(x), Var(y))
    nec = L.weaken_to(L.necessitation(L.eq_refl(Var(x))), (h,))
    z = Variable("z", sigma)
    got = L.rewrite(L.hypothesis((), h), nec, z, D.box(D.eq(Var(x), Var(z))))
    return L.forall_intros(L.cp(got, h), x, y)


def nec_distinctness(sigma=E) -> L.Derivation:
    """⊢ ∀x y.(x ≠ y → □(x ≠ y)), through Choice."""
    x, y = Variable("x", sigma), Variable("y", sigma)
    z = Variable("z", sigma)
    a = D.eq(Var(z), Var(x))
    rel, total = separator(z, a, D.neq(Var(z), Var(x)))
    f, ex = _choose(rel, total, "f", fun(sigma, T))
    spec = App(D.FORALL(sigma), Abs(z, App(App(rel, Var(z)), App(Var(f), Var(z)))))
    hyp = D.neq(Var(x), Var(y))
    gamma = (spec, hyp)
    hs = L.assume(gamma, spec)
    f_x = L.mp(L.weaken_to(L.eq_refl(Var(x)), gamma), L.and_elim_r(_spec_at(hs, rel, f, Var(x))))
    y_neq = L.neq_sym(L.assume(gamma, hyp))
    f_y = L.mp(y_neq, L.and_elim_l(_spec_at(hs, rel, f, Var(y))))
    goal = L.conv(_box_distinct(f, Var(x), Var(y), f_x, f_y, D.eq(Var(x), Var(y))), D.box(hyp))
    body = L.cp(goal, hyp)
    return L.forall_intros(L.exists_elim(ex, body, spec, f), x, y)


def barcan(sigma=E) -> L.Derivation:
    """⊢ ∀X.((∀z.□Xz) → □∀z.Xz), one argument place."""
    X, z, y = Variable("X", pred(sigma)), Variable("z", sigma), Variable("y", sigma)
    xz = App(Var(X), Var(z))
    hyp = D.forall(z, D.box(xz))
    top_fn = Abs(y, TOP)
    at = L.conv(L.forall_elim(L.hypothesis((), hyp), Var(z)), D.eq(TOP, xz))
    flipped = L.conv(L.eq_sym(at), D.eq(xz, App(top_fn, Var(z))))
    same = L.fun_ext(flipped, z)  # X = λy.⊤
    trivial = L.forall_intro(L.conv(L.top_thm(), App(top_fn, Var(z))), z)
    nec = L.weaken_to(L.necessitation(trivial), (hyp,))
    W = Variable("W", pred(sigma))
    got = L.rewrite(L.eq_sym(same), nec, W, D.box(D.forall(z, App(Var(W), Var(z)))))
    return L.forall_intro(L.cp(got, hyp), X)


def converse_barcan_rule(d: L.Derivation, y: Variable) -> L.Derivation:
    """Γ ⊢ □∀z.P gives Γ ⊢ ∀y.□P[y/z] (y not free in Γ)."""
    allp = d.conclusion.arg
    sigma, f = L._quant_parts(allp, D.FORALL)
    py = L.instance(f, Var(y))
    both = D.conj(py, allp)
    split = L.mutual(
        allp, both,
        lambda h: L.and_intro(L.forall_elim(h, Var(y)), h),
        lambda h: L.and_elim_r(h),
    )  # ⊢ ∀z.P = (P[y] ∧ ∀z.P)
    top_p = L.conv(d, D.eq(TOP, allp))
    x = Variable("x", T)
    s1 = L.rewrite(L.weaken_to(split, d.assumptions), top_p, x, D.eq(TOP, Var(x)))
    s2 = L.rewrite(L.eq_sym(top_p), s1, x, D.eq(TOP, D.conj(py, Var(x))))
    and_top = L.mutual(
        D.conj(py, TOP), py,
        lambda h: L.and_elim_l(h),
        lambda h: L.and_intro(h, L.top_in(h.assumptions)),
    )
    s3 = L.eq_trans(s2, L.weaken_to(and_top, d.assumptions))
    return L.forall_intro(L.conv(s3, D.box(py)), y)


def converse_barcan(sigma=E) -> L.Derivation:
    """⊢ ∀X.(□∀z.Xz → ∀z.□Xz), one argument place."""
    X, z = Variable("X", pred(sigma)), Variable("z", sigma)
    hyp = D.box(D.forall(z, App(Var(X), Var(z))))
    got = converse_barcan_rule(L.hypothesis((), hyp), z)
    return L.forall_intro(L.cp(got, hyp), X)


# ---------------------------------------------------------------- intensionalism

def prop_intensionalism_rule(d: L.Derivation) -> L.Derivation:
    """Γ ⊢ □(A ↔ B) gives Γ ⊢ A = B."""
    bi = d.conclusion.arg
    a, b = bi.fun.arg, bi.arg
    gamma = d.assumptions
    x = Variable("x", T)
    top_eq = L.conv(d, D.eq(TOP, bi))
    a_and_top = L.mutual(a, D.conj(a, TOP), lambda h: L.and_intro(h, L.top_in(h.assumptions)), L.and_elim_l)
    b_and_top = L.mutual(b, D.conj(b, TOP), lambda h: L.and_intro(h, L.top_in(h.assumptions)), L.and_elim_l)
    ab = D.conj(a, b)

    def to_ab(h, left):
        side = L.and_elim_l(h)
        other = L.iff_elim(L.and_elim_r(h), side)
        return L.and_intro(side, other) if left else L.and_intro(other, side)

    def from_ab(h, left):
        side = L.and_elim_l(h) if left else L.and_elim_r(h)
        iff = L.iff_from_proofs(L.weaken_to(L.and_elim_r(h), (a,)), L.weaken_to(L.and_elim_l(h), (b,)), a, b)
        return L.and_intro(side, iff)

    ea = L.mutual(D.conj(a, bi), ab, lambda h: to_ab(h, True), lambda h: from_ab(h, True))
    eb = L.mutual(D.conj(b, bi), ab, lambda h: to_ab(h, False), lambda h: from_ab(h, False))
    ra = L.rewrite(top_eq, L.weaken_to(a_and_top, gamma), x, D.eq(a, D.conj(a, Var(x))))
    rb = L.rewrite(top_eq, L.weaken_to(b_and_top, gamma), x, D.eq(b, D.conj(b, Var(x))))
    a_ab = L.eq_trans(ra, L.weaken_to(ea, gamma))
    b_ab = L.eq_trans(rb, L.weaken_to(eb, gamma))
    return L.eq_trans(a_ab, L.eq_sym(b_ab))


def prop_intensionalism() -> L.Derivation:
    """⊢ ∀p q.(□(p ↔ q) → p = q)."""
    hyp = D.box(D.iff(P, Q))
    got = prop_intensionalism_rule(L.hypothesis((), hyp))
    return L.forall_intros(L.cp(got, hyp), p_, q_)


def property_intensionalism(sigma=E) -> L.Derivation:
    """⊢ ∀F G.(□(F ≡ G) → F = G), one argument place."""
    F, G = Variable("F", pred(sigma)), Variable("G", pred(sigma))
    x = Variable("x", sigma)
    fx, gx = App(Var(F), Var(x)), App(Var(G), Var(x))
    hyp = D.box(D.coext(Var(F), Var(G)))
    h = L.conv(L.hypothesis((), hyp), D.box(D.forall(x, D.iff(fx, gx))))
    each = L.forall_elim(converse_barcan_rule(h, x), Var(x))
    ident = prop_intensionalism_rule(each)
    same = L.fun_ext(ident, x)
    return L.forall_intros(L.cp(same, hyp), F, G)


# ---------------------------------------------------------------- non-extensionality

def two_values(gamma, ext: Term, a: Term) -> L.Derivation:
    """Γ ⊢ (A → A = ⊤) ∧ (¬A → A = ⊥), where Γ contains ∀p q.((p ↔ q) → p = q)."""
    he = L.assume(gamma, ext)
    inst_top = L.forall_elims(he, a, TOP)
    inst_bot = L.forall_elims(he, a, BOT)
    # A ⊢ A ↔ ⊤
    g1 = L.union(gamma, (a,))
    i1 = L.iff_from_proofs(L.top_in(g1 + (a,)), L.assume(g1 + (TOP,), a), a, TOP)
    pos = L.cp(L.mp(i1, inst_top), a)
    na = D.neg(a)
    g2 = L.union(gamma, (na,))
    b1 = L.ex_falso(L.neg_elim(L.assume(g2 + (a,), a), L.assume(g2 + (a,), na)), BOT)
    b2 = L.ex_falso(L.assume(g2 + (BOT,), BOT), a)
    i2 = L.iff_from_proofs(b1, b2, a, BOT)
    neg = L.cp(L.mp(i2, inst_bot), na)
    return L.and_intro(pos, neg)


def refute_extensionality() -> L.Derivation:
    """⊢ ∃p q.((p ↔ q) ∧ p ≠ q).

    Assuming the negation gives extensionality for propositions, so every
    proposition is ⊤ or ⊥; then no property of propositions has three
    members, so ∃ applied to (0+1)+1+1 is ⊥, against Potential Infinity.
    """
    body = D.conj(D.iff(P, Q), D.neq(P, Q))
    goal = D.exists(p_, D.exists(q_, body))
    ng = D.neg(goal)
    ext = D.foralls([p_, q_], D.imp(D.iff(P, Q), D.eq(P, Q)))
    ext_d = _ext_from_no_witness(ng, ext, body)
    three = nat_by_closure(3, T)
    n = three.conclusion.arg
    ex_n = App(D.EXISTS(pred(T)), n)
    no_three = _no_three(ext, n)  # ext ⊢ ¬∃X.n X
    tv = two_values((ext,), ext, ex_n)
    is_bot = L.mp(L.conv(no_three, D.neg(ex_n)), L.and_elim_r(tv))
    bot_eq = L.eq_sym(is_bot)  # ⊥ = ∃n
    inf = L.weaken_to(potential_infinity(three), (ext,))
    contradiction = L.neg_elim(bot_eq, L.conv(inf, D.neg(bot_eq.conclusion)))
    closed = L.use(ext_d, contradiction)
    return L.by_contradiction(closed, ng)


def _ext_from_no_witness(ng: Term, ext: Term, body: Term) -> L.Derivation:
    """¬∃p q.((p ↔ q) ∧ p ≠ q) ⊢ ∀p q.((p ↔ q) → p = q)."""
    iff = D.iff(P, Q)
    e = D.eq(P, Q)
    ne = D.neg(e)
    g = (ng, iff, ne)
    w = L.and_intro(L.assume(g, iff), L.conv(L.assume(g, ne), D.neq(P, Q)))
    ex_q = L.exists_intro(w, q_, body, Q)
    ex_pq = L.exists_intro(ex_q, p_, D.exists(q_, body), P)
    bot = L.neg_elim(ex_pq, L.assume(g, ng))
    got = L.by_contradiction(bot, ne)
    return L.forall_intros(L.cp(got, iff), p_, q_)


def _witness(d: L.Derivation, letter: str, sigma, cont) -> L.Derivation:
    """Unpack Γ ⊢ ∃x.P: ``cont`` receives Γ, P[w] ⊢ P[w] and the eigenvariable w."""
    sig, f = L._quant_parts(d.conclusion, D.EXISTS)
    w = L.fresh(letter, sig, d, f)
    inst = L.instance(f, Var(w))
    inner = cont(L.assume(d.assumptions, inst), w)
    return L.exists_elim(d, inner, inst, w)


def _unpack_plus(d: L.Derivation, letter: str, cont) -> L.Derivation:
    """Γ ⊢ (a + b) X: ``cont`` gets (Y ⊆ X, a Y, b (X∖Y)) proofs and Y."""
    n = d.conclusion.fun
    a, b = n.fun.arg, n.arg
    x_ = d.conclusion.arg
    sigma = x_.type.dom
    Y = L.fresh(letter, pred(sigma), d)
    inst = D.conj(D.subset(Var(Y), x_), D.conj(App(a, Var(Y)), App(b, D.setminus(x_, Var(Y)))))
    ex = L.conv(d, D.exists(Y, inst))
    h = L.assume(d.assumptions, inst)
    rest = L.and_elim_r(h)
    inner = cont(L.and_elim_l(h), L.and_elim_l(rest), L.and_elim_r(rest), Var(Y))
    return L.exists_elim(ex, inner, inst, Y)


def _unpack_one(d: L.Derivation, letter: str, cont) -> L.Derivation:
    """Γ ⊢ 1 X: ``cont`` gets a proof of X w and w."""
    x_ = d.conclusion.arg
    sigma = x_.type.dom
    w = L.fresh(letter, sigma, d)
    z = Variable("z", sigma)
    inst = D.conj(App(x_, Var(w)), D.forall(z, D.imp(App(x_, Var(z)), D.eq(Var(w), Var(z)))))
    ex = L.conv(d, D.exists(w, inst))
    h = L.assume(d.assumptions, inst)
    inner = cont(L.and_elim_l(h), Var(w))
    return L.exists_elim(ex, inner, inst, w)


def _diff_parts(d: L.Derivation, x_: Term, y_: Term, z: Term):
    """Γ ⊢ (X∖Y) z gives (Γ ⊢ X z, Γ ⊢ ¬Y z)."""
    both = L.conv(d, D.conj(App(x_, z), D.neg(App(y_, z))))
    return L.and_elim_l(both), L.and_elim_r(both)


def _distinct(in_y: L.Derivation, out_y: L.Derivation, y_: Term, a: Term, b: Term) -> L.Derivation:
    """Γ ⊢ Y a and Γ ⊢ ¬Y b give Γ ⊢ ¬(a = b)."""
    e = D.eq(a, b)
    h = L.assume(L.union(in_y.assumptions, out_y.assumptions), e)
    w = Variable("w", a.type)
    yb = L.rewrite(h, in_y, w, App(y_, Var(w)))
    return L.neg_intro(L.neg_elim(yb, out_y), e)


def _no_three(ext: Term, n: Term) -> L.Derivation:
    """ext ⊢ ¬∃X.n X for n = ((0+1)+1)+1 at type t."""
    X = Variable("X", pred(T))
    nx = App(n, Var(X))
    ex = D.exists(X, nx)
    gamma = (ext, nx)

    def level3(sub3, two_y, one_rest, Y):
        # n X: Y ⊆ X, ((0+1)+1) Y, 1 (X∖Y)
        def level2(sub2, one_y2, one_y_rest, Y2):
            def level1(sub1, zero_y3, one_last, Y3):
                return _unpack_one(one_last, "a", lambda in_a, a:
                       _unpack_one(one_y_rest, "b", lambda in_b, b:
                       _unpack_one(one_rest, "c", lambda in_c, c:
                       _pigeonhole(ext, Var(X), Y, Y2, Y3, in_a, in_b, in_c, sub3, sub2, a, b, c))))
            return _unpack_plus(one_y2, "Y", level1)
        return _unpack_plus(two_y, "Y", level2)

    bot = _unpack_plus(L.assume(gamma, nx), "Y", level3)
    gen = L.exists_elim(L.assume((ext, ex), ex), L.adapt(bot, L.union((ext, ex), gamma)), nx, X)
    return L.neg_intro(gen, ex)


def _pigeonhole(ext, X, Y, Y2, Y3, in_a, in_b, in_c, sub3, sub2, a, b, c) -> L.Derivation:
    """Three pairwise distinct propositions contradict two truth values."""
    # a ∈ Y2∖Y3, b ∈ Y∖Y2, c ∈ X∖Y
    a_y2, _ = _diff_parts(in_a, Y2, Y3, a)
    b_y, b_not_y2 = _diff_parts(in_b, Y, Y2, b)
    _, c_not_y = _diff_parts(in_c, X, Y, c)
    a_y = L.conv(L.ui(sub2, a_y2), App(Y, a))
    ab = _distinct(a_y2, b_not_y2, Y2, a, b)
    ac = _distinct(a_y, c_not_y, Y, a, c)
    bc = _distinct(b_y, c_not_y, Y, b, c)
    gamma = L.union(ab.assumptions, ac.assumptions, bc.assumptions, (ext,))
    ab, ac, bc = (L.adapt(d, gamma) for d in (ab, ac, bc))
    tv = {v: L.adapt(two_values(gamma, ext, v), gamma) for v in (a, b, c)}
    distinct = {(a, b): ab, (a, c): ac, (b, c): bc}

    def value(v, truth, ctx):
        both = L.weaken_to(tv[v], ctx)
        hv = L.assume(ctx, v if truth else D.neg(v))
        return L.mp(hv, L.and_elim_l(both) if truth else L.and_elim_r(both))

    def leaf(assign: dict, ctx) -> L.Derivation:
        for (u, v), d in distinct.items():
            if assign[u] == assign[v]:
                eu, ev = value(u, assign[u], ctx), value(v, assign[v], ctx)
                return L.neg_elim(L.eq_trans(eu, L.eq_sym(ev)), L.weaken_to(d, ctx))
        raise AssertionError("three values, two classes")

    def split(vs, assign, ctx):
        if not vs:
            return leaf(assign, ctx)
        v, rest = vs[0], vs[1:]
        pos = split(rest, {**assign, v: True}, L.union(ctx, (v,)))
        neg = split(rest, {**assign, v: False}, L.union(ctx, (D.neg(v),)))
        return L.cases(v, L.adapt(pos, L.union(ctx, (v,))), L.adapt(neg, L.union(ctx, (D.neg(v),))))

    return split([a, b, c], {}, gamma)


# ---------------------------------------------------------------- classes and descriptions

def truth_value_description(a: Term) -> tuple[Term, L.Derivation]:
    """The term ιq.((A → q = ⊤) ∧ (¬A → q = ⊥)) and a proof of its defining property.

    The proof has the ι axiom at type t as its only assumption.
    """
    q = L.fresh("q", T, a)
    qv = Var(q)
    phi_body = D.conj(D.imp(a, D.eq(qv, TOP)), D.imp(D.neg(a), D.eq(qv, BOT)))
    phi = Abs(q, phi_body)
    axiom = d_iota_1(T)
    desc = App(Con(Iota(T)), phi)

    # ∃!φ, i.e. 1 φ: ∃y.(φ y ∧ ∀z.(φ z → y = z))
    def unique_at(val: Term, holds: bool) -> L.Derivation:
        side = a if holds else D.neg(a)
        g = (side,)
        h_val = _phi_holds(a, phi, val, holds, g)
        z = Variable("z", T)
        hz = L.assume(g, App(phi, Var(z)))
        zb = L.conv(hz, phi.instantiate(Var(z)))
        part = L.and_elim_l(zb) if holds else L.and_elim_r(zb)
        z_val = L.mp(L.assume(hz.assumptions, side), part)
        val_z = L.eq_sym(z_val)
        uniq = L.forall_intro(L.cp(val_z, App(phi, Var(z))), z)
        y = Variable("y", T)
        body = D.conj(App(phi, Var(y)), D.forall(z, D.imp(App(phi, Var(z)), D.eq(Var(y), Var(z)))))
        return L.exists_intro(L.and_intro(h_val, uniq), y, body, val)

    one = L.cases(a, unique_at(TOP, True), unique_at(BOT, False))
    one = L.conv(one, App(D.EXISTS1(T), phi))
    inst = L.forall_elim(L.hypothesis((), axiom), phi)
    got = L.mp(L.weaken_to(one, (axiom,)), inst)
    return desc, L.conv(got, phi.instantiate(desc))


def _phi_holds(a: Term, phi: Abs, val: Term, holds: bool, gamma) -> L.Derivation:
    """Γ ⊢ φ val, where Γ decides A and val is the matching truth value."""
    na = D.neg(a)
    if holds:
        pos = L.cp(L.weaken_to(L.eq_refl(TOP), gamma + (a,)), a)
        bot = L.neg_elim(L.assume(gamma + (na,), a), L.assume(gamma + (na,), na))
        neg = L.cp(L.ex_falso(bot, D.eq(TOP, BOT)), na)
    else:
        bot = L.neg_elim(L.assume(gamma + (a,), a), L.assume(gamma + (a,), na))
        pos = L.cp(L.ex_falso(bot, D.eq(BOT, TOP)), a)
        neg = L.cp(L.weaken_to(L.eq_refl(BOT), gamma + (na,)), na)
    both = L.and_intro(L.adapt(pos, gamma), L.adapt(neg, gamma))
    return L.conv(both, App(phi, val))


def _iff_with_value(a: Term, w: Term, d: L.Derivation) -> L.Derivation:
    """From Γ ⊢ (A → w = ⊤) ∧ (¬A → w = ⊥) derive Γ ⊢ A ↔ w."""
    gamma = d.assumptions
    x = Variable("x", T)
    ga = L.union(gamma, (a,))
    w_top = L.mp(L.assume(ga, a), L.and_elim_l(d))
    fwd = L.rewrite(L.eq_sym(w_top), L.top_in(ga), x, Var(x))
    na = D.neg(a)
    gw = L.union(gamma, (w, na))
    w_bot = L.mp(L.assume(gw, na), L.and_elim_r(d))
    bot = L.rewrite(w_bot, L.assume(gw, w), x, Var(x))
    bwd = L.by_contradiction(L.adapt(bot, gw), na)
    return L.iff_from_proofs(fwd, L.adapt(bwd, L.union(gamma, (w,))), a, w)


def alpha_iff_top() -> L.Derivation:
    """D_ι.1 at t ⊢ α ↔ ⊤."""
    desc, prop = truth_value_description(P)
    per_p = _iff_with_value(P, desc, prop)
    per_p = L.conv(per_p, D.iff(P, App(D.ACTUALITY(), P)))
    alpha = L.conv(L.forall_intro(per_p, p_), D.ALPHA())
    gamma = alpha.assumptions
    fwd = L.cp(L.top_in(L.union(gamma, (D.ALPHA(),))), D.ALPHA())
    bwd = L.cp(L.weaken_to(alpha, (TOP,)), TOP)
    return L.iff_intro(fwd, bwd)


def class_comprehension_iota(sigma=E) -> L.Derivation:
    """D_ι.1 at t ⊢ ∀X.∃Y.(class Y ∧ X ≡ Y), with the witness λy.ιp.((Xy → p = ⊤) ∧ (¬Xy → p = ⊥))."""
    X, y = Variable("X", pred(sigma)), Variable("y", sigma)
    xy = App(Var(X), Var(y))
    desc, prop = truth_value_description(xy)
    witness = Abs(y, desc)
    wy = App(witness, Var(y))
    prop = L.conv(prop, D.conj(D.imp(xy, D.eq(wy, TOP)), D.imp(D.neg(xy), D.eq(wy, BOT))))
    gamma = prop.assumptions
    # class: W y = ⊤ ∨ W y = ⊥
    left = L.or_intro_l(L.mp(L.assume(L.union(gamma, (xy,)), xy), L.and_elim_l(prop)), D.eq(wy, BOT))
    right = L.or_intro_r(L.mp(L.assume(L.union(gamma, (D.neg(xy),)), D.neg(xy)), L.and_elim_r(prop)), D.eq(wy, TOP))
    cls = L.cases(xy, L.adapt(left, L.union(gamma, (xy,))), L.adapt(right, L.union(gamma, (D.neg(xy),))))
    cls = L.conv(L.forall_intro(cls, y), App(D.CLASS(sigma), witness))
    co = L.conv(L.forall_intro(_iff_with_value(xy, wy, prop), y), D.coext(Var(X), witness))
    Y = Variable("Y", pred(sigma))
    body = D.conj(App(D.CLASS(sigma), Var(Y)), D.coext(Var(X), Var(Y)))
    ex = L.exists_intro(L.and_intro(cls, co), Y, body, witness)
    return L.forall_intro(ex, X)


def class_extensionality(sigma=E) -> L.Derivation:
    """⊢ ∀X.(class X → ∀Y.(class Y → (X ≡ Y → X = Y)))."""
    X, Y, y = Variable("X", pred(sigma)), Variable("Y", pred(sigma)), Variable("y", sigma)
    cx, cy = App(D.CLASS(sigma), Var(X)), App(D.CLASS(sigma), Var(Y))
    co = D.coext(Var(X), Var(Y))
    gamma = (cx, cy, co)
    xy, yy = App(Var(X), Var(y)), App(Var(Y), Var(y))
    vx = L.conv(L.forall_elim(L.conv(L.assume(gamma, cx), D.forall(y, D.disj(D.eq(xy, TOP), D.eq(xy, BOT)))), Var(y)),
                D.disj(D.eq(xy, TOP), D.eq(xy, BOT)))
    vy = L.conv(L.forall_elim(L.conv(L.assume(gamma, cy), D.forall(y, D.disj(D.eq(yy, TOP), D.eq(yy, BOT)))), Var(y)),
                D.disj(D.eq(yy, TOP), D.eq(yy, BOT)))
    bi = L.conv(L.forall_elim(L.assume(gamma, co), Var(y)), D.iff(xy, yy))
    x = Variable("x", T)
    goal = D.eq(xy, yy)

    def truth(d_eq_top):  # Γ' ⊢ u = ⊤ gives Γ' ⊢ u
        return L.rewrite(L.eq_sym(d_eq_top), L.top_in(d_eq_top.assumptions), x, Var(x))

    def branch(ex_val: bool, ey_val: bool):
        ex_f = D.eq(xy, TOP if ex_val else BOT)
        ey_f = D.eq(yy, TOP if ey_val else BOT)
        ctx = L.union(gamma, (ex_f, ey_f))
        hx, hy = L.assume(ctx, ex_f), L.assume(ctx, ey_f)
        if ex_val == ey_val:
            return L.eq_trans(hx, L.eq_sym(hy))
        if ex_val:
            got_y = L.iff_elim(L.weaken_to(bi, ctx), truth(hx))
            bot = L.rewrite(hy, got_y, x, Var(x))
        else:
            got_x = L.iff_elim(L.weaken_to(bi, ctx), truth(hy))
            bot = L.rewrite(hx, got_x, x, Var(x))
        return L.ex_falso(bot, goal)

    def over_y(ex_val: bool):
        ex_f = D.eq(xy, TOP if ex_val else BOT)
        ctx = L.union(gamma, (ex_f,))
        return L.or_elim(L.weaken_to(vy, ctx), branch(ex_val, True), branch(ex_val, False))

    each = L.or_elim(vx, over_y(True), over_y(False))
    same = L.fun_ext(L.adapt(each, gamma), y)
    return L.forall_intro(L.cp(L.forall_intro(L.cp(L.cp(same, co), cy), Y), cx), X)


# ---------------------------------------------------------------- the slingshot

def slingshot_attempt() -> L.Derivation:
    """Try to identify p with @p by Intensionality while the ι axiom is assumed.

    Both directions hold only under the ι axiom, so Intensionality is applied
    to non-singleton contexts and the kernel refuses with NonEmptyContext.
    """
    desc, prop = truth_value_description(P)
    per_p = _iff_with_value(P, desc, prop)
    at = L.conv(per_p, D.iff(P, App(D.ACTUALITY(), P)))
    gamma = at.assumptions
    act = App(D.ACTUALITY(), P)
    fwd = L.iff_elim(at, L.assume(gamma, P))
    bwd = L.iff_elim(at, L.assume(gamma, act))
    return intensionality(fwd, bwd)


# ---------------------------------------------------------------- benchmark tautologies and identity

r_ = Variable("r", T)
R = Var(r_)


def excluded_middle() -> L.Derivation:
    """⊢ ∀p.(p ∨ ¬p)."""
    return L.forall_intro(L.lem(P), p_)


def de_morgan() -> L.Derivation:
    """⊢ ∀p q.(¬(p ∧ q) → ¬p ∨ ¬q)."""
    h = D.neg(D.conj(P, Q))
    np_, nq = D.neg(P), D.neg(Q)
    # ¬¬p ⊢ ¬q, under h
    g = (h, D.neg(np_), Q)
    both = L.and_intro(L.double_neg_elim(L.assume(g, D.neg(np_))), L.assume(g, Q))
    got = L.neg_intro(L.neg_elim(both, L.assume(g, h)), Q)
    imp = L.cp(got, D.neg(np_))
    return L.forall_intros(L.cp(L.conv(imp, D.disj(np_, nq)), h), p_, q_)


def distribution() -> L.Derivation:
    """⊢ ∀p q r.(p ∧ (q ∨ r) → (p ∧ q) ∨ (p ∧ r))."""
    h = D.conj(P, D.disj(Q, R))
    goal = D.disj(D.conj(P, Q), D.conj(P, R))
    hp = L.and_elim_l(L.hypothesis((), h))
    alt = L.and_elim_r(L.hypothesis((), h))
    left = L.or_intro_l(L.and_intro(L.weaken_to(hp, (Q,)), L.assume((h,), Q)), D.conj(P, R))
    right = L.or_intro_r(L.and_intro(L.weaken_to(hp, (R,)), L.assume((h,), R)), D.conj(P, Q))
    got = L.or_elim(alt, left, right)
    assert got.conclusion == goal
    return L.forall_intros(L.cp(got, h), p_, q_, r_)


def leibniz_law(sigma=E) -> L.Derivation:
    """⊢ ∀F x y.(x = y → F x → F y)."""
    F, x, y = Variable("F", pred(sigma)), Variable("x", sigma), Variable("y", sigma)
    e, fx = D.eq(Var(x), Var(y)), App(Var(F), Var(x))
    z = Variable("z", sigma)
    got = L.rewrite(L.assume((e, fx), e), L.assume((e, fx), fx), z, App(Var(F), Var(z)))
    return L.forall_intros(L.cp(L.cp(got, fx), e), F, x, y)


def reflexivity(sigma=E) -> L.Derivation:
    """⊢ ∀x.x = x."""
    x = Variable("x", sigma)
    return L.forall_intro(L.eq_refl(Var(x)), x)


# ---------------------------------------------------------------- Henkin's extensionality

def henkin_extensionality(theory) -> L.Derivation:
    """⊢ ∀p q.((p ↔ q) → p = q) by Henkin's rule of extensionality."""
    from ..kernel import RuleId, variant_rule

    bi = D.iff(P, Q)
    a = L.iff_elim(L.assume((bi, P), bi), L.assume((bi, P), P))
    b = L.iff_elim(L.assume((bi, Q), bi), L.assume((bi, Q), Q))
    e = variant_rule(RuleId.V_HenkinExt, a, b, theory=theory)
    return L.forall_intros(L.cp(e, bi), p_, q_)


def henkin_inconsistency(theory) -> L.Derivation:
    """⊢ ⊥ from non-extensionality together with Henkin's rule."""
    ref = refute_extensionality()
    ext = henkin_extensionality(theory)
    body = D.conj(D.iff(P, Q), D.neq(P, Q))
    inner = D.exists(q_, body)

    def per_q(h_inner: L.Derivation):
        hb = L.assume(h_inner.assumptions, body)
        same = L.mp(L.and_elim_l(hb), L.weaken_to(L.forall_elims(ext, P, Q), hb.assumptions))
        bot = L.neg_elim(same, L.conv(L.and_elim_r(hb), D.neg(D.eq(P, Q))))
        return L.exists_elim(h_inner, bot, body, q_)

    h1 = L.hypothesis((), inner)
    bot = per_q(h1)
    return L.exists_elim(ref, bot, inner, p_)
