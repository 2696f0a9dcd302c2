"""Numerals: unpacking their witnesses and proving ℕ of small numerals."""
from __future__ import annotations

from .. import definitions as D
from ..errors import ShapeMismatch
from ..terms import T, Abs, App, Term, Var, Variable, pred
from . import logic as L


def closure_numeral(k: int, sigma) -> Term:
    """0, 0+1, (0+1)+1, …: the terms reached by applying closure k times."""
    out = D.ZERO(sigma)
    for _ in range(k):
        out = D.plus(out, D.ONE(sigma))
    return out


def nat_by_closure(k: int, sigma) -> L.Derivation:
    """⊢ ℕ((0+1)+…+1), unfolding ℕ and using the closure hypothesis k times."""
    n = closure_numeral(k, sigma)
    X = Variable("X", pred(D.numeral_type(sigma)))
    base = App(Var(X), D.ZERO(sigma))
    y = Variable("y", D.numeral_type(sigma))
    step = D.subset(Var(X), Abs(y, App(Var(X), D.plus(Var(y), D.ONE(sigma)))))
    gamma = (base, step)
    cur = L.assume(gamma, base)
    m = D.ZERO(sigma)
    for _ in range(k):
        nxt = D.plus(m, D.ONE(sigma))
        # X ⊆ λy.X(y+1) with X m gives (λy.X(y+1)) m
        got = L.ui(L.assume(gamma, step), cur)
        cur = L.conv(got, App(Var(X), nxt))
        m = nxt
    body = L.cp(L.cp(cur, step), base)
    closed = L.forall_intro(body, X)
    return L.conv(closed, D.nat(n))


# ---------------------------------------------------------------- equality of numerals

def _member(d_coext: L.Derivation, z: Term, forward: bool, d_side: L.Derivation) -> L.Derivation:
    """From Γ ⊢ X ≡ Y and Γ ⊢ X z (or Y z) conclude the other side at z."""
    x, y = _coext_args(d_coext.conclusion)
    inst = L.conv(L.forall_elim(d_coext, z), D.iff(App(x, z), App(y, z)))
    return L.iff_elim(inst, d_side)


def _coext_intro(gamma, x: Term, y: Term, fwd, bwd) -> L.Derivation:
    """Γ ⊢ X ≡ Y from builders mapping a hypothesis X z (resp. Y z) to the other side."""
    sigma = x.type.dom
    z = L.fresh("z", sigma, gamma, x, y)
    xz, yz = App(x, Var(z)), App(y, Var(z))
    to = fwd(L.assume(gamma, xz), Var(z))
    back = bwd(L.assume(gamma, yz), Var(z))
    i = L.iff_from_proofs(L.conv(to, yz), L.conv(back, xz), xz, yz)
    return L.conv(L.forall_intro(i, z), D.coext(x, y))


def transfer(m: Term, d_m: L.Derivation, d_coext: L.Derivation) -> L.Derivation:
    """Γ ⊢ m Y and Γ ⊢ Y ≡ Y' give Γ ⊢ m Y' for m built from 1 and +."""
    sigma = m.type.dom.dom
    y_, y2 = _coext_args(d_coext.conclusion)
    if m == D.ONE(sigma):
        return _transfer_one(d_m, d_coext, y_, y2, sigma)
    if m == D.ZERO(sigma):
        return _transfer_zero(d_m, d_coext, y_, y2, sigma)
    head = m.fun.fun if isinstance(m, App) and isinstance(m.fun, App) else None
    if head != D.PLUS(sigma):
        raise ShapeMismatch("transfer handles numerals built from 0, 1 and +")
    a, b = m.fun.arg, m.arg
    return _transfer_plus(a, b, d_m, d_coext, y_, y2, sigma)


def _coext_args(t: Term):
    rel = t.arg  # ≡ X Y
    return rel.fun.arg, rel.arg


def _coext_flip(d: L.Derivation) -> L.Derivation:
    x, y = _coext_args(d.conclusion)
    return _coext_intro(
        d.assumptions, y, x,
        lambda h, z: _member(d, z, False, h),
        lambda h, z: _member(d, z, True, h),
    )


def _one_body(Y: Term, sigma, w: Variable) -> Term:
    z = Variable("z", sigma)
    if z == w:
        z = z.prime()
    return D.conj(App(Y, Var(w)), D.forall(z, D.imp(App(Y, Var(z)), D.eq(Var(w), Var(z)))))


def _transfer_one(d_m, d_coext, y_, y2, sigma):
    gamma = L.union(d_m.assumptions, d_coext.assumptions)
    w = L.fresh("y", sigma, gamma, y_, y2)
    ex = L.conv(d_m, D.exists(w, _one_body(y_, sigma, w)))
    inst = _one_body(y_, sigma, w)
    h = L.assume(gamma, inst)
    yw = L.and_elim_l(h)
    uniq = L.and_elim_r(h)
    y2w = _member(d_coext, Var(w), True, yw)
    z = L.fresh("z", sigma, gamma, w, y_, y2)
    hz = L.assume(h.assumptions, App(y2, Var(z)))
    yz = _member(_coext_flip(d_coext), Var(z), True, hz)
    wz = L.mp(yz, L.forall_elim(uniq, Var(z)))
    u = L.forall_intro(L.cp(wz, App(y2, Var(z))), z)
    body = L.and_intro(y2w, u)
    body = L.conv(body, _one_body(y2, sigma, w))
    intro = L.exists_intro(body, w, _one_body(y2, sigma, w), Var(w))
    out = L.exists_elim(ex, intro, inst, w)
    return L.conv(out, App(D.ONE(sigma), y2))


def _transfer_zero(d_m, d_coext, y_, y2, sigma):
    gamma = L.union(d_m.assumptions, d_coext.assumptions)
    w = L.fresh("y", sigma, gamma, y_, y2)
    ex = D.exists(w, App(y2, Var(w)))
    h = L.assume(gamma, App(y2, Var(w)))
    yw = _member(_coext_flip(d_coext), Var(w), True, h)
    found = L.exists_intro(yw, w, App(y_, Var(w)), Var(w))
    not_ex = L.conv(d_m, D.neg(D.exists(w, App(y_, Var(w)))))
    bot = L.neg_elim(found, not_ex)
    bot = L.exists_elim(L.assume(gamma, ex), bot, App(y2, Var(w)), w)
    return L.conv(L.neg_intro(bot, ex), App(D.ZERO(sigma), y2))


def _plus_body(a: Term, b: Term, X: Term, sigma, Z: Variable) -> Term:
    return D.conj(D.subset(Var(Z), X), D.conj(App(a, Var(Z)), App(b, D.setminus(X, Var(Z)))))


def _transfer_plus(a, b, d_m, d_coext, y_, y2, sigma):
    gamma = L.union(d_m.assumptions, d_coext.assumptions)
    Z = L.fresh("Y", pred(sigma), gamma, y_, y2, a, b)
    inst = _plus_body(a, b, y_, sigma, Z)
    ex = L.conv(d_m, D.exists(Z, inst))
    h = L.assume(gamma, inst)
    sub = L.and_elim_l(h)
    rest = L.and_elim_r(h)
    az = L.and_elim_l(rest)
    bdiff = L.and_elim_r(rest)
    # Z ⊆ Y'
    sub2 = _subset_from(h.assumptions, Var(Z), y2,
                        lambda hz, zz: _member(d_coext, zz, True, L.conv(L.ui(sub, hz), App(y_, zz))))
    # (Y∖Z) ≡ (Y'∖Z)
    d1, d2 = D.setminus(y_, Var(Z)), D.setminus(y2, Var(Z))

    def fwd(hd, zz):
        both = L.conv(hd, D.conj(App(y_, zz), D.neg(App(Var(Z), zz))))
        l_ = _member(d_coext, zz, True, L.and_elim_l(both))
        return L.conv(L.and_intro(l_, L.and_elim_r(both)), App(d2, zz))

    def bwd(hd, zz):
        both = L.conv(hd, D.conj(App(y2, zz), D.neg(App(Var(Z), zz))))
        l_ = _member(_coext_flip(d_coext), zz, True, L.and_elim_l(both))
        return L.conv(L.and_intro(l_, L.and_elim_r(both)), App(d1, zz))

    co = _coext_intro(h.assumptions, d1, d2, fwd, bwd)
    bdiff2 = transfer(b, bdiff, co)
    body = L.and_intro(sub2, L.and_intro(az, bdiff2))
    new_inst = _plus_body(a, b, y2, sigma, Z)
    intro = L.exists_intro(L.conv(body, new_inst), Z, new_inst, Var(Z))
    out = L.exists_elim(ex, intro, inst, Z)
    return L.conv(out, App(D.plus(a, b), y2))


def _subset_from(gamma, x: Term, y: Term, step) -> L.Derivation:
    """Γ ⊢ X ⊆ Y from a builder taking Γ, X z ⊢ X z to Γ, X z ⊢ Y z."""
    sigma = x.type.dom
    z = L.fresh("z", sigma, gamma, x, y)
    xz = App(x, Var(z))
    got = L.conv(step(L.assume(gamma, xz), Var(z)), App(y, Var(z)))
    g = L.discharge_last(got, xz)
    return L.universal_generalization(g, z)


# ---------------------------------------------------------------- numeral identities

def _diff_diff(gamma, X: Term, Y: Term, d_sub: L.Derivation) -> L.Derivation:
    """Γ ⊢ Y ⊆ X gives Γ ⊢ Y ≡ X∖(X∖Y)."""
    inner = D.setminus(X, Y)
    outer = D.setminus(X, inner)

    def fwd(h, z):
        xz = L.ui(d_sub, h)
        xz = L.conv(xz, App(X, z))
        nn = D.conj(App(X, z), D.neg(App(Y, z)))
        hh = L.assume(h.assumptions, nn)
        bot = L.neg_elim(h, L.and_elim_r(hh))
        not_inner = L.neg_intro(bot, nn)
        return L.conv(L.and_intro(xz, not_inner), App(outer, z))

    def bwd(h, z):
        both = L.conv(h, D.conj(App(X, z), D.neg(D.conj(App(X, z), D.neg(App(Y, z))))))
        xz, ni = L.and_elim_l(both), L.and_elim_r(both)
        ny = D.neg(App(Y, z))
        hy = L.assume(h.assumptions, ny)
        bot = L.neg_elim(L.and_intro(xz, hy), ni)
        return L.by_contradiction(bot, ny)

    return _coext_intro(gamma, Y, outer, fwd, bwd)


def _swap_one(m: Term, sigma, X: Term, d_left: L.Derivation, forward: bool) -> L.Derivation:
    """(m+1) X ⊢ (1+m) X when ``forward``, else (1+m) X ⊢ (m+1) X."""
    one = D.ONE(sigma)
    a, b = (m, one) if forward else (one, m)
    gamma = d_left.assumptions
    Z = L.fresh("Y", pred(sigma), gamma, X, m)
    inst = _plus_body(a, b, X, sigma, Z)
    ex = L.conv(d_left, D.exists(Z, inst))
    h = L.assume(gamma, inst)
    sub = L.and_elim_l(h)
    rest = L.and_elim_r(h)
    az, bdiff = L.and_elim_l(rest), L.and_elim_r(rest)
    W = D.setminus(X, Var(Z))
    w_sub = _subset_from(h.assumptions, W, X, lambda hw, z: L.and_elim_l(L.conv(hw, D.conj(App(X, z), D.neg(App(Var(Z), z))))))
    co = _diff_diff(h.assumptions, X, Var(Z), sub)  # Z ≡ X∖(X∖Z)
    moved = transfer(a, az, co)
    body = L.and_intro(w_sub, L.and_intro(bdiff, moved))
    new_inst = D.conj(D.subset(W, X), D.conj(App(b, W), App(a, D.setminus(X, W))))
    body = L.conv(body, new_inst)
    Zw = L.fresh("Y", pred(sigma), gamma, X, m, Z)
    target = _plus_body(b, a, X, sigma, Zw)
    intro = L.exists_intro(body, Zw, target, W)
    out = L.exists_elim(ex, intro, inst, Z)
    return L.conv(out, App(D.plus(b, a), X))


def commute_one(m: Term, sigma) -> L.Derivation:
    """⊢ m + 1 = 1 + m, by Intensionality and Function Extensionality."""
    X = Variable("X", pred(sigma))
    lhs = App(D.plus(m, D.ONE(sigma)), Var(X))
    rhs = App(D.plus(D.ONE(sigma), m), Var(X))
    ident = L.mutual(
        lhs, rhs,
        lambda h: _swap_one(m, sigma, Var(X), h, True),
        lambda h: _swap_one(m, sigma, Var(X), h, False),
    )
    return L.fun_ext(ident, X)


def zero_plus_one(sigma) -> L.Derivation:
    """⊢ 0 + 1 = 1."""
    X = Variable("X", pred(sigma))
    zero, one = D.ZERO(sigma), D.ONE(sigma)
    lhs = App(D.plus(zero, one), Var(X))
    rhs = App(one, Var(X))

    def forward(h):
        gamma = h.assumptions
        Z = L.fresh("Y", pred(sigma), gamma, X)
        inst = _plus_body(zero, one, Var(X), sigma, Z)
        ex = L.conv(h, D.exists(Z, inst))
        hh = L.assume(gamma, inst)
        rest = L.and_elim_r(hh)
        empty, od = L.and_elim_l(rest), L.and_elim_r(rest)
        W = D.setminus(Var(X), Var(Z))

        def back(hx, z):
            nz = App(Var(Z), z)
            hz = L.assume(hx.assumptions, nz)
            w = L.fresh("y", sigma, hz, Z)
            found = L.exists_intro(hz, w, App(Var(Z), Var(w)), z)
            bot = L.neg_elim(found, L.conv(empty, D.neg(D.exists(w, App(Var(Z), Var(w))))))
            return L.conv(L.and_intro(hx, L.neg_intro(bot, nz)), App(W, z))

        co = _coext_intro(hh.assumptions, W, Var(X),
                          lambda hw, z: L.and_elim_l(L.conv(hw, D.conj(App(Var(X), z), D.neg(App(Var(Z), z))))),
                          back)
        got = transfer(one, od, co)
        return L.exists_elim(ex, got, inst, Z)

    def backward(h):
        gamma = h.assumptions
        y = Variable("y", sigma)
        empty = Abs(y, D.BOT())
        sub = _subset_from(gamma, empty, Var(X), lambda hz, z: L.ex_falso(L.conv(hz, D.BOT()), App(Var(X), z)))
        w = Variable("y", sigma)
        hw = L.assume(gamma, App(empty, Var(w)))
        nothing = L.neg_intro(L.conv(hw, D.BOT()), App(empty, Var(w)))
        not_ex = L.conv(L.neg_intro(L.exists_elim(L.assume(gamma, D.exists(w, App(empty, Var(w)))),
                                                    L.neg_elim(hw, nothing), App(empty, Var(w)), w),
                                     D.exists(w, App(empty, Var(w)))),
                        App(zero, empty))
        W = D.setminus(Var(X), empty)

        def fwd(hx, z):
            nb = App(empty, z)
            hb = L.assume(hx.assumptions, nb)
            return L.conv(L.and_intro(hx, L.neg_intro(L.conv(hb, D.BOT()), nb)), App(W, z))

        co = _coext_intro(gamma, Var(X), W, fwd,
                          lambda hw_, z: L.and_elim_l(L.conv(hw_, D.conj(App(Var(X), z), D.neg(App(empty, z))))))
        od = transfer(one, h, co)
        body = L.and_intro(sub, L.and_intro(not_ex, od))
        Z = Variable("Y", pred(sigma))
        target = _plus_body(zero, one, Var(X), sigma, Z)
        intro = L.exists_intro(L.conv(body, _plus_body_at(zero, one, Var(X), empty)), Z, target, empty)
        return L.conv(intro, lhs)

    ident = L.mutual(lhs, rhs, forward, backward)
    return L.fun_ext(ident, X)


def _plus_body_at(a: Term, b: Term, X: Term, W: Term) -> Term:
    return D.conj(D.subset(W, X), D.conj(App(a, W), App(b, D.setminus(X, W))))


def numeral_is_nat(k: int, sigma) -> L.Derivation:
    """⊢ ℕ_σ(k), for the right-associated numeral k.

    The closure hypothesis is applied k times; the terms it produces are
    rewritten to the numeral with ⊢ 0+1 = 1 and ⊢ m+1 = 1+m.
    """
    if k < 0:
        raise ValueError("numerals are non-negative")
    target = D.numeral(k, sigma)
    X = Variable("X", pred(D.numeral_type(sigma)))
    base = App(Var(X), D.ZERO(sigma))
    y = Variable("y", D.numeral_type(sigma))
    step = D.subset(Var(X), Abs(y, App(Var(X), D.plus(Var(y), D.ONE(sigma)))))
    gamma = (base, step)
    cur = L.assume(gamma, base)
    m = D.ZERO(sigma)
    n = L.fresh("n", D.numeral_type(sigma), X)
    for i in range(k):
        got = L.ui(L.assume(gamma, step), cur)
        cur = L.conv(got, App(Var(X), D.plus(m, D.ONE(sigma))))
        if i == 0:
            ident = L.weaken_to(zero_plus_one(sigma), gamma)
        elif i == 1:
            ident = None  # 1 + 1 is already the numeral 2
        else:
            ident = L.weaken_to(commute_one(m, sigma), gamma)
        if ident is not None:
            cur = L.rewrite(ident, cur, n, App(Var(X), Var(n)))
        m = D.numeral(i + 1, sigma)
    assert cur.conclusion == App(Var(X), target)
    body = L.cp(L.cp(cur, step), base)
    return L.conv(L.forall_intro(body, X), D.nat(target))
