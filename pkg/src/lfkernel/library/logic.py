"""Derived rules, each a fixed composition of kernel rules.

Contexts are kept duplicate-free.  Rules that combine several derivations
first bring them to a common context (the union, in order of first
appearance) with exchange, contraction and weakening.  The strict public
forms :func:`modus_ponens` and :func:`conditional_proof` do not realign.
"""
from __future__ import annotations

from functools import lru_cache

from .. import definitions as D
from ..errors import ContextMismatch, ShapeMismatch
from ..kernel import (
    Derivation,
    beta_rule,
    contraction,
    cut,
    exchange,
    function_extensionality,
    hypothesis,
    intensionality,
    negation_elimination,
    universal_generalization,
    universal_instantiation,
    weakening,
)
from ..terms import T, Abs, App, Fun, Term, Var, Variable, pred

# ---------------------------------------------------------------- variables


def fresh(letter: str, ty, *avoid) -> Variable:
    """``letter`` (primed as needed) not free in anything in ``avoid``."""
    used: set = set()

    def add(a):
        if isinstance(a, Derivation):
            used.update(a.sequent.free_vars)
        elif isinstance(a, Term):
            used.update(a.fv)
        elif isinstance(a, Variable):
            used.add(a)
        elif isinstance(a, (list, tuple, set, frozenset)):
            for b in a:
                add(b)

    for a in avoid:
        add(a)
    v = Variable(letter, ty)
    while v in used:
        v = v.prime()
    return v


def _var(x) -> Variable:
    return x.var if isinstance(x, Var) else x


# ---------------------------------------------------------------- contexts

def _move_to_end(d: Derivation, i: int) -> Derivation:
    n = len(d.assumptions)
    while i < n - 1:
        d = exchange(d, i)
        i += 1
    return d


def _dedupe(d: Derivation) -> Derivation:
    while True:
        g = d.assumptions
        pos: dict = {}
        dup = None
        for i, a in enumerate(g):
            if a in pos:
                dup = (pos[a], i)
                break
            pos[a] = i
        if dup is None:
            return d
        i, j = dup
        d = _move_to_end(d, i)
        d = _move_to_end(d, j - 1)
        d = contraction(d)


def adapt(d: Derivation, gamma) -> Derivation:
    """Turn Δ ⊢ P into Γ ⊢ P when every member of Δ occurs in Γ."""
    gamma = union(tuple(gamma))
    if d.assumptions == gamma:
        return d
    d = _dedupe(d)
    have = list(d.assumptions)
    for a in have:
        if a not in gamma:
            raise ContextMismatch("cannot adapt: an assumption is missing from the target context")
    for a in gamma:
        if a not in have:
            d = weakening(d, a)
            have.append(a)
    for k, a in enumerate(gamma):
        idx = list(d.assumptions).index(a, k)
        while idx > k:
            d = exchange(d, idx - 1)
            idx -= 1
    return d


def union(*contexts) -> tuple:
    out: list = []
    for g in contexts:
        for a in g:
            if a not in out:
                out.append(a)
    return tuple(out)


def align(*ds: Derivation) -> list[Derivation]:
    gamma = union(*(d.assumptions for d in ds))
    return [adapt(d, gamma) for d in ds]


def conv(d: Derivation, target: Term) -> Derivation:
    """β step to ``target`` unless the conclusion already is ``target``."""
    if d.conclusion == target:
        return d
    return beta_rule(d, target)


def assume(gamma, p: Term) -> Derivation:
    """Γ ⊢ P for P in Γ (P is appended to Γ when absent)."""
    gamma = union(tuple(gamma), (p,))
    return adapt(hypothesis((), p), gamma)


def weaken_to(d: Derivation, gamma) -> Derivation:
    return adapt(d, union(d.assumptions, tuple(gamma)))


def discharge_last(d: Derivation, p: Term) -> Derivation:
    """Move the assumption ``p`` to the end of the context."""
    g = list(d.assumptions)
    if p not in g:
        d = weakening(d, p)
        g.append(p)
    return _move_to_end(d, g.index(p))


def use(lemma: Derivation, main: Derivation) -> Derivation:
    """From Γ ⊢ B and Δ with B ⊢ C conclude Γ ∪ Δ ⊢ C (cut, then tidy)."""
    b = lemma.conclusion
    rest = tuple(a for a in main.assumptions if a != b)
    main = discharge_last(_dedupe(main), b)
    out = cut(lemma, main)
    return adapt(out, union(lemma.assumptions, rest))


# ---------------------------------------------------------------- truth, implication

@lru_cache(maxsize=None)
def top_thm() -> Derivation:
    """⊢ ⊤, by hypothesis and Universal Generalization."""
    p = Variable("p", T)
    ident = Abs(p, Var(p))
    return universal_generalization(hypothesis((), App(ident, Var(p))), p)


def top_in(gamma) -> Derivation:
    return adapt(top_thm(), tuple(gamma))


def modus_ponens(d1: Derivation, d2: Derivation) -> Derivation:
    """Γ ⊢ P and Γ ⊢ P → Q give Γ ⊢ Q (β, Def →, Universal Instantiation, β)."""
    p_ = d1.conclusion
    parts = _imp_parts(d2.conclusion)
    if parts is None or parts[0] != p_:
        raise ShapeMismatch("modus ponens needs Γ ⊢ P and Γ ⊢ P → Q")
    _, q_ = parts
    avoid = (d1, d2)
    p = fresh("p", T, avoid)
    r = fresh("r", T, avoid, p)
    lp, lq = Abs(r, p_), Abs(r, q_)
    a = beta_rule(d1, App(lp, Var(p)))
    b = beta_rule(d2, D.subset(lp, lq))
    c = universal_instantiation(b, a)
    return beta_rule(c, q_)


def conditional_proof(d: Derivation) -> Derivation:
    """Γ, P ⊢ Q gives Γ ⊢ P → Q (hypothesis, β, cut, β, Universal Generalization, Def →)."""
    if not d.assumptions:
        raise ShapeMismatch("conditional proof needs an assumption to discharge")
    *gamma, p_ = d.assumptions
    q_ = d.conclusion
    p = fresh("p", T, d)
    r = fresh("r", T, d, p)
    lp, lq = Abs(r, p_), Abs(r, q_)
    lpp = App(lp, Var(p))
    h = beta_rule(hypothesis((), lpp), p_)  # (λr.P)p ⊢ P
    c = cut(h, d)  # (λr.P)p, Γ ⊢ Q
    c = _move_to_end(c, 0)  # Γ, (λr.P)p ⊢ Q
    c = beta_rule(c, App(lq, Var(p)))
    u = universal_generalization(c, p)
    return beta_rule(u, D.imp(p_, q_))


def _imp_parts(t: Term):
    if isinstance(t, App) and isinstance(t.fun, App) and t.fun.fun == D.IMP():
        return t.fun.arg, t.arg
    return None


def mp(d1: Derivation, d2: Derivation) -> Derivation:
    """Modus ponens after aligning contexts; the implication may be β-folded."""
    a, b = align(d1, d2)
    parts = _imp_parts(b.conclusion)
    if parts is None or parts[0] != a.conclusion:
        raise ShapeMismatch("mp: second premise is not an implication from the first")
    return modus_ponens(a, b)


def cp(d: Derivation, p: Term | None = None) -> Derivation:
    """Discharge ``p`` (default: the last assumption)."""
    if p is not None:
        d = discharge_last(_dedupe(d), p)
    return conditional_proof(d)


def imp_intro_trivial(gamma, p: Term, d: Derivation) -> Derivation:
    """From Γ ⊢ Q conclude Γ ⊢ P → Q by weakening."""
    return cp(weaken_to(d, (p,)), p)


# ---------------------------------------------------------------- quantifiers

def forall_intro(d: Derivation, x) -> Derivation:
    """Γ ⊢ P gives Γ ⊢ ∀x.P when x is not free in Γ."""
    x = _var(x)
    p_ = d.conclusion
    sigma = x.type
    forall_body = D.FORALL(sigma).scope  # (λy.⊤) ⊆ X, with X loose
    top_fn = forall_body.fun.arg  # λy.⊤
    w = weakening(d, App(top_fn, Var(x)))
    w = beta_rule(w, App(Abs(x, p_), Var(x)))
    u = universal_generalization(w, x)
    return beta_rule(u, D.forall(x, p_))


def forall_intros(d: Derivation, *xs) -> Derivation:
    for x in reversed(xs):
        d = forall_intro(d, x)
    return d


def _quant_parts(t: Term, head):
    if isinstance(t, App):
        ty = t.arg.type
        if isinstance(ty, Fun) and ty.cod == T and t.fun == head(ty.dom):
            return ty.dom, t.arg
    return None


def instance(f: Term, a: Term) -> Term:
    return f.instantiate(a) if isinstance(f, Abs) else App(f, a)


def forall_elim(d: Derivation, a: Term) -> Derivation:
    """Γ ⊢ ∀x.P gives Γ ⊢ P[a/x] (β, Universal Instantiation, β)."""
    parts = _quant_parts(d.conclusion, D.FORALL)
    if parts is None:
        raise ShapeMismatch("forall_elim needs Γ ⊢ ∀x.P")
    sigma, f = parts
    top_fn = D.FORALL(sigma).scope.fun.arg
    inc = beta_rule(d, D.subset(top_fn, f))
    ta = beta_rule(top_in(d.assumptions), App(top_fn, a))
    out = universal_instantiation(inc, ta)
    return conv(out, instance(f, a))


def forall_elims(d: Derivation, *args) -> Derivation:
    for a in args:
        d = forall_elim(d, a)
    return d


def exists_intro(d: Derivation, x, body: Term, a: Term) -> Derivation:
    """Γ ⊢ body[a/x] gives Γ ⊢ ∃x.body."""
    x = _var(x)
    sigma = x.type
    f = Abs(x, body)
    y = fresh("y", sigma, d, f)
    A = App(D.FORALL(sigma), Abs(y, D.neg(App(f, Var(y)))))
    h = assume(d.assumptions, A)
    nfa = conv(forall_elim(h, a), D.neg(d.conclusion))
    bot = neg_elim(d, nfa)
    return conv(cp(bot, A), App(D.EXISTS(sigma), f))


def exists_elim(d_ex: Derivation, d_body: Derivation, inst: Term, y) -> Derivation:
    """Γ ⊢ ∃x.P and Δ, P[y/x] ⊢ R (y fresh) give Γ ∪ Δ ⊢ R."""
    y = _var(y)
    parts = _quant_parts(d_ex.conclusion, D.EXISTS)
    if parts is None:
        raise ShapeMismatch("exists_elim needs Γ ⊢ ∃x.P")
    sigma, f = parts
    if inst != instance(f, Var(y)):
        raise ShapeMismatch("exists_elim: the assumption is not the instance at the eigenvariable")
    r = d_body.conclusion
    nr = D.neg(r)
    gamma = union(d_ex.assumptions, tuple(a for a in d_body.assumptions if a != inst))
    body = weaken_to(d_body, (nr,))
    bot = neg_elim(body, assume(body.assumptions, nr))
    not_inst = neg_intro(bot, inst)  # Γ', ¬R ⊢ ¬P[y]
    gen = forall_intro(not_inst, y)
    ex = conv(d_ex, D.neg(gen.conclusion))
    closed = neg_elim(gen, ex)
    return adapt(by_contradiction(closed, nr), union(gamma, ()))


# ---------------------------------------------------------------- negation and classical reasoning

def ex_falso(d: Derivation, p: Term) -> Derivation:
    """Γ ⊢ ⊥ gives Γ ⊢ P, by Universal Instantiation on the definition of ⊥."""
    if d.conclusion != D.BOT():
        raise ShapeMismatch("ex falso needs Γ ⊢ ⊥")
    bot = D.BOT()
    f, g = bot.fun.arg, bot.arg  # λp.⊤ and λp.p
    t = beta_rule(top_in(d.assumptions), App(f, p))
    out = universal_instantiation(d, t)
    return conv(out, p)


def neg_elim(d_p: Derivation, d_np: Derivation) -> Derivation:
    """Γ ⊢ P and Γ ⊢ ¬P give Γ ⊢ ⊥."""
    a, b = align(d_p, d_np)
    return mp(a, conv(b, D.imp(a.conclusion, D.BOT())))


def neg_intro(d: Derivation, p: Term | None = None) -> Derivation:
    """Γ, P ⊢ ⊥ gives Γ ⊢ ¬P."""
    p = p if p is not None else d.assumptions[-1]
    return conv(cp(d, p), D.neg(p))


def by_contradiction(d: Derivation, np: Term | None = None) -> Derivation:
    """Γ, ¬P ⊢ ⊥ gives Γ ⊢ P (ex falso, then Negation Elimination)."""
    np = np if np is not None else d.assumptions[-1]
    if not (isinstance(np, App) and np.fun == D.NEG()):
        raise ShapeMismatch("by_contradiction discharges an assumption ¬P")
    p = np.arg
    d = discharge_last(_dedupe(d), np)
    return negation_elimination(ex_falso(d, p))


def double_neg_intro(d: Derivation) -> Derivation:
    p = d.conclusion
    np = D.neg(p)
    return neg_intro(neg_elim(d, assume(d.assumptions, np)), np)


def double_neg_elim(d: Derivation) -> Derivation:
    nnp = d.conclusion
    np = nnp.arg
    return by_contradiction(neg_elim(assume(d.assumptions, np), d), np)


def lem(a: Term) -> Derivation:
    """⊢ A ∨ ¬A, which unfolds to ¬A → ¬A."""
    na = D.neg(a)
    return conv(cp(hypothesis((), na)), D.disj(a, na))


def cases(a: Term, d_pos: Derivation, d_neg: Derivation) -> Derivation:
    """Γ, A ⊢ C and Γ, ¬A ⊢ C give Γ ⊢ C."""
    c = d_pos.conclusion
    if d_neg.conclusion != c:
        raise ShapeMismatch("cases: the two branches prove different conclusions")
    na = D.neg(a)
    pos = cp(d_pos, a)
    neg = cp(d_neg, na)
    pos, neg = align(pos, neg)
    nc = D.neg(c)
    h = assume(pos.assumptions, nc)
    not_a = contrapositive(pos, h)  # ⊢ ¬A
    got = mp(not_a, neg)
    return by_contradiction(neg_elim(got, h), nc)


def contrapositive(d_imp: Derivation, d_nq: Derivation) -> Derivation:
    """Γ ⊢ P → Q and Γ ⊢ ¬Q give Γ ⊢ ¬P."""
    p, q = _imp_parts(d_imp.conclusion)
    h = assume(union(d_imp.assumptions, d_nq.assumptions), p)
    return neg_intro(neg_elim(mp(h, d_imp), d_nq), p)


# ---------------------------------------------------------------- connectives

def or_intro_l(d: Derivation, q: Term) -> Derivation:
    """Γ ⊢ P gives Γ ⊢ P ∨ Q."""
    p = d.conclusion
    np = D.neg(p)
    bot = neg_elim(d, assume(d.assumptions, np))
    return conv(cp(ex_falso(bot, q), np), D.disj(p, q))


def or_intro_r(d: Derivation, p: Term) -> Derivation:
    """Γ ⊢ Q gives Γ ⊢ P ∨ Q."""
    np = D.neg(p)
    return conv(cp(weaken_to(d, (np,)), np), D.disj(p, d.conclusion))


def _bin_parts(t: Term, head: Term, name: str):
    if isinstance(t, App) and isinstance(t.fun, App) and t.fun.fun == head:
        return t.fun.arg, t.arg
    raise ShapeMismatch(f"expected a {name}")


def or_elim(d_or: Derivation, d_l: Derivation, d_r: Derivation, left: Term | None = None, right: Term | None = None) -> Derivation:
    """Γ ⊢ A ∨ B, Γ, A ⊢ C and Γ, B ⊢ C give Γ ⊢ C."""
    a, b = _bin_parts(d_or.conclusion, D.OR(), "disjunction")
    imp = conv(d_or, D.imp(D.neg(a), b))
    na = D.neg(a)
    from_na = mp(assume(imp.assumptions, na), imp)  # Γ, ¬A ⊢ B
    neg_branch = use(from_na, weaken_to(d_r, (b,)))
    pos_branch = weaken_to(d_l, (a,))
    gamma = union(d_or.assumptions, *(tuple(x for x in dd.assumptions if x not in (a, b)) for dd in (d_l, d_r)))
    pos_branch = adapt(pos_branch, union(gamma, (a,)))
    neg_branch = adapt(neg_branch, union(gamma, (na,)))
    return cases(a, pos_branch, neg_branch)


def and_intro(d_p: Derivation, d_q: Derivation) -> Derivation:
    """Γ ⊢ P and Γ ⊢ Q give Γ ⊢ P ∧ Q (P ∧ Q unfolds to ¬(¬P ∨ ¬Q))."""
    a, b = align(d_p, d_q)
    p, q = a.conclusion, b.conclusion
    np, nq = D.neg(p), D.neg(q)
    alt = D.disj(np, nq)
    h = conv(assume(a.assumptions, alt), D.imp(D.neg(np), nq))
    got_nq = mp(double_neg_intro(a), h)
    bot = neg_elim(b, got_nq)
    return conv(neg_intro(bot, alt), D.conj(p, q))


def and_elim_l(d: Derivation) -> Derivation:
    p, q = _bin_parts(d.conclusion, D.AND(), "conjunction")
    np, nq = D.neg(p), D.neg(q)
    alt = or_intro_l(assume(d.assumptions, np), nq)
    bot = neg_elim(alt, conv(d, D.neg(D.disj(np, nq))))
    return by_contradiction(bot, np)


def and_elim_r(d: Derivation) -> Derivation:
    p, q = _bin_parts(d.conclusion, D.AND(), "conjunction")
    np, nq = D.neg(p), D.neg(q)
    alt = or_intro_r(assume(d.assumptions, nq), np)
    bot = neg_elim(alt, conv(d, D.neg(D.disj(np, nq))))
    return by_contradiction(bot, nq)


def iff_intro(d_pq: Derivation, d_qp: Derivation) -> Derivation:
    """Γ ⊢ P → Q and Γ ⊢ Q → P give Γ ⊢ P ↔ Q."""
    p, q = _imp_parts(d_pq.conclusion)
    both = and_intro(d_pq, d_qp)
    return conv(both, D.iff(p, q))


def iff_from_proofs(d_q_from_p: Derivation, d_p_from_q: Derivation, p: Term, q: Term) -> Derivation:
    """Γ, P ⊢ Q and Γ, Q ⊢ P give Γ ⊢ P ↔ Q."""
    return iff_intro(cp(d_q_from_p, p), cp(d_p_from_q, q))


def _iff_unpack(d: Derivation):
    p, q = _bin_parts(d.conclusion, D.IFF(), "biconditional")
    both = conv(d, D.conj(D.imp(p, q), D.imp(q, p)))
    return p, q, both


def iff_elim_l(d_iff: Derivation, d_p: Derivation) -> Derivation:
    """Γ ⊢ P ↔ Q and Γ ⊢ P give Γ ⊢ Q."""
    _, _, both = _iff_unpack(d_iff)
    return mp(d_p, and_elim_l(both))


def iff_elim_r(d_iff: Derivation, d_q: Derivation) -> Derivation:
    """Γ ⊢ P ↔ Q and Γ ⊢ Q give Γ ⊢ P."""
    _, _, both = _iff_unpack(d_iff)
    return mp(d_q, and_elim_r(both))


def iff_elim(d_iff: Derivation, d_side: Derivation) -> Derivation:
    p, q = _bin_parts(d_iff.conclusion, D.IFF(), "biconditional")
    if d_side.conclusion == p:
        return iff_elim_l(d_iff, d_side)
    if d_side.conclusion == q:
        return iff_elim_r(d_iff, d_side)
    raise ShapeMismatch("iff_elim: the second premise proves neither side")


# ---------------------------------------------------------------- identity

def eq_refl(a: Term) -> Derivation:
    """⊢ a = a: hypothesis, Universal Generalization, β."""
    z = fresh("Z", pred(a.type), a)
    za = Abs(z, App(Var(z), a))
    u = universal_generalization(hypothesis((), App(za, Var(z))), z)
    return beta_rule(u, D.eq(a, a))


def _eq_parts(t: Term):
    if isinstance(t, App) and isinstance(t.fun, App):
        a = t.fun.arg
        if t.fun.fun == D.EQ(a.type):
            return a, t.arg
    raise ShapeMismatch("expected an identity a = b")


def leibniz(d_eq: Derivation, d_pa: Derivation, motive: Term) -> Derivation:
    """Γ ⊢ a = b and Γ ⊢ M a give Γ ⊢ M b (unfold =, then Universal Instantiation)."""
    e, p = align(d_eq, d_pa)
    a, b = _eq_parts(e.conclusion)
    z = fresh("Z", pred(a.type), a, b, motive)
    za, zb = Abs(z, App(Var(z), a)), Abs(z, App(Var(z), b))
    inc = beta_rule(e, D.subset(za, zb))
    prem = conv(p, App(za, motive))
    out = universal_instantiation(inc, prem)
    return conv(out, instance(motive, b))


def eq_sym(d: Derivation) -> Derivation:
    a, b = _eq_parts(d.conclusion)
    x = fresh("x", a.type, a, b)
    motive = Abs(x, D.eq(Var(x), a))
    return leibniz(d, weaken_to(eq_refl(a), d.assumptions), motive)


def eq_trans(d1: Derivation, d2: Derivation) -> Derivation:
    a, b = _eq_parts(d1.conclusion)
    b2, c = _eq_parts(d2.conclusion)
    if b != b2:
        raise ShapeMismatch("eq_trans: middle terms differ")
    x = fresh("x", a.type, a, c)
    return leibniz(d2, d1, Abs(x, D.eq(a, Var(x))))


def eq_chain(*ds: Derivation) -> Derivation:
    out = ds[0]
    for d in ds[1:]:
        out = eq_trans(out, d)
    return out


def congruence(d: Derivation, f: Term) -> Derivation:
    """Γ ⊢ a = b gives Γ ⊢ f a = f b."""
    a, b = _eq_parts(d.conclusion)
    x = fresh("x", a.type, a, b, f)
    refl = weaken_to(eq_refl(App(f, a)), d.assumptions)
    return leibniz(d, refl, Abs(x, D.eq(App(f, a), App(f, Var(x)))))


def rewrite(d_eq: Derivation, d: Derivation, x, body: Term) -> Derivation:
    """Γ ⊢ a = b and Γ ⊢ body[a/x] give Γ ⊢ body[b/x]."""
    return leibniz(d_eq, d, Abs(_var(x), body))


def neq_sym(d: Derivation) -> Derivation:
    """Γ ⊢ a ≠ b gives Γ ⊢ b ≠ a."""
    a, b = _bin_parts(d.conclusion, D.NEQ(d.conclusion.fun.arg.type), "distinctness")
    nd = conv(d, D.neg(D.eq(a, b)))
    h = assume(d.assumptions, D.eq(b, a))
    bot = neg_elim(eq_sym(h), nd)
    return conv(neg_intro(bot, D.eq(b, a)), D.neq(b, a))


# ---------------------------------------------------------------- intensionality and modality

def intensional_identity(d1: Derivation, d2: Derivation) -> Derivation:
    """P ⊢ Q and Q ⊢ P (exactly) give ⊢ P = Q."""
    return intensionality(d1, d2)


def mutual(p: Term, q: Term, q_from_p, p_from_q) -> Derivation:
    """⊢ P = Q from builders of P ⊢ Q and Q ⊢ P in the singleton contexts."""
    d1 = adapt(q_from_p(hypothesis((), p)), (p,))
    d2 = adapt(p_from_q(hypothesis((), q)), (q,))
    return intensionality(d1, d2)


def necessitation(d: Derivation) -> Derivation:
    """⊢ P gives ⊢ □P, i.e. ⊢ ⊤ = P, by Intensionality."""
    if d.assumptions:
        raise ShapeMismatch("necessitation applies to theorems (empty context) only")
    top = D.TOP()
    p = d.conclusion
    d1 = weakening(d, top)
    d2 = weakening(top_thm(), p)
    return intensionality(d1, d2)


def box_elim(d: Derivation) -> Derivation:
    """Γ ⊢ □P gives Γ ⊢ P."""
    box = d.conclusion
    if not (isinstance(box, App) and box.fun == D.BOX()):
        raise ShapeMismatch("box_elim needs Γ ⊢ □P")
    x = fresh("x", T, box)
    return leibniz(conv(d, D.eq(D.TOP(), box.arg)), top_in(d.assumptions), Abs(x, Var(x)))


@lru_cache(maxsize=None)
def top_imp_identity(q: Term) -> Derivation:
    """⊢ (⊤ → Q) = Q."""
    top = D.TOP()
    return mutual(
        D.imp(top, q),
        q,
        lambda h: mp(top_in(h.assumptions), h),
        lambda h: cp(weaken_to(h, (top,)), top),
    )


def k_rule(d_imp: Derivation, d_a: Derivation) -> Derivation:
    """Γ ⊢ □(A → B) and Γ ⊢ □A give Γ ⊢ □B."""
    a_, b_ = align(d_imp, d_a)
    inner = a_.conclusion.arg
    a, b = _imp_parts(inner)
    top = D.TOP()
    sym = eq_sym(conv(b_, D.eq(top, a)))  # A = ⊤
    x = fresh("x", T, a, b)
    step = rewrite(sym, conv(a_, D.eq(top, inner)), x, D.eq(top, D.imp(Var(x), b)))  # ⊤ = (⊤ → B)
    lemma = weaken_to(top_imp_identity(b), step.assumptions)
    return conv(eq_trans(step, lemma), D.box(b))


def fun_ext(d: Derivation, x) -> Derivation:
    return function_extensionality(d, _var(x))


def ui(d_inc: Derivation, d_fa: Derivation) -> Derivation:
    """Universal Instantiation after aligning contexts."""
    a, b = align(d_inc, d_fa)
    return universal_instantiation(a, b)


# ---------------------------------------------------------------- substitution of equivalents

def plug(context: Term, hole, t: Term) -> Term:
    """Replace the variable ``hole`` in ``context`` by ``t``, letting binders of
    ``context`` capture free variables of ``t`` that share their names."""
    hole = _var(hole)

    def go(c: Term) -> Term:
        if hole not in c.fv:
            return c
        if isinstance(c, Var):
            return t
        if isinstance(c, App):
            return App(go(c.fun), go(c.arg))
        x = c.hint if c.hint not in c.fv else c.bound
        from ..terms import _open

        return Abs(x, go(_open(c.scope, Var(x), 0)))

    return go(context)


def lambda_closure_identity(d1: Derivation, d2: Derivation) -> tuple[Derivation, list]:
    """From P ⊢ Q and Q ⊢ P derive ⊢ λx⃗.P = λx⃗.Q, x⃗ the free variables of P and Q."""
    e = intensionality(d1, d2)
    p, q = d2.conclusion, d1.conclusion
    xs = sorted(p.fv | q.fv, key=lambda v: (v.letter, v.primes, repr(v.type)))
    lhs, rhs = p, q
    for x in reversed(xs):
        fl, fr = Abs(x, lhs), Abs(x, rhs)
        e = function_extensionality(beta_rule(e, D.eq(App(fl, Var(x)), App(fr, Var(x)))), x)
        lhs, rhs = fl, fr
    return e, xs


def subst_equiv(d1: Derivation, d2: Derivation, context) -> Derivation:
    """P ⊢ Q and Q ⊢ P give C[P] ⊢ C[Q] for any context C, binders included.

    ``context`` is a function from the filler to the whole formula, or a pair
    (formula, hole variable) whose binders may capture variables of P and Q.
    """
    if not callable(context):
        c_term, hole = context
        context = lambda t, c=c_term, h=hole: plug(c, h, t)  # noqa: E731
    ident, xs = lambda_closure_identity(d1, d2)
    p, q = d2.conclusion, d1.conclusion
    lhs, rhs = ident.conclusion.fun.arg, ident.conclusion.arg
    cp_, cq = context(p), context(q)
    h = fresh("H", lhs.type, cp_, cq, lhs, rhs)
    motive = Abs(h, context(Var(h)(*[Var(x) for x in xs])))
    start = conv(hypothesis((), cp_), App(motive, lhs))
    got = leibniz(weaken_to(ident, (cp_,)), start, motive)
    return conv(got, cq)
