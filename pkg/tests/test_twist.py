import random
import threading

import pytest

from leavitt.algebra import Element, basis_monomials
from leavitt.linalg import rank
from leavitt.matrix import InvertiblePair, invertible_scalar, iterate_Pm, iterate_Pm_inverse
from leavitt.morphism import matrix_iso, phi, try_fixed_point_shortcut
from leavitt.sampling import random_element, random_gl, random_homogeneous
from leavitt.twist import (
    FailsAt, InImage, InconclusiveUpTo, IsomorphismCertified, NotFoundUpTo, TwistContext, TwistError,
    check_iso_criterion, image_membership, mk_theta, theta_apply, twist_mul, unit_power, verify_lemma_ei,
    verify_lemma_pm,
)

Q2_12 = "-e1*e2' - e1*e2*e1'^2 + e2^2*e1'*e2'"


@pytest.fixture
def ctx_x(cat):
    return TwistContext(cat.aut_x)


def test_twist_examples(cat, ctx_x, rng):
    ident = TwistContext.identity(cat.g)
    for _ in range(20):
        a, b = random_element(cat.g, rng), random_element(cat.g, rng)
        assert twist_mul(ident, a, b) == a * b
        a0 = random_homogeneous(cat.g, rng, 0)
        assert twist_mul(ctx_x, a0, b) == a0 * b
    assert twist_mul(ctx_x, cat.el("e1"), cat.el("e2'")) == cat.el("e1*e1'")


def test_power_cache(cat):
    ctx = TwistContext(cat.aut_u)
    a = cat.el("e1*e2' + e2^2")
    for m, k in ((2, 1), (-1, 3), (-2, -1), (3, -3)):
        assert ctx.apply_power(m + k, a) == ctx.apply_power(m, ctx.apply_power(k, a))
    assert ctx.power(0).is_identity()


def test_power_cache_threads(cat):
    ctx = TwistContext(cat.aut_y)
    out = []

    def work():
        out.append(ctx.power(3))

    ts = [threading.Thread(target=work) for _ in range(6)]
    for t in ts:
        t.start()
    for t in ts:
        t.join()
    assert all(o is out[0] for o in out)


def test_ungraded_rejected(cat):
    P = cat.mat("[v, e1*e1*e2'; 0, v]")
    Pinv = cat.mat("[v, -e1*e1*e2'; 0, v]")
    from leavitt.matrix import mk_invertible

    aut = try_fixed_point_shortcut(phi(mk_invertible(P, Pinv)))
    assert aut is not None and not aut.graded
    with pytest.raises(TwistError):
        TwistContext(aut)


def test_theta_images(cat):
    tx = mk_theta(TwistContext(cat.aut_x))
    assert tx.images[("g", 0)] == cat.el("e2'") and tx.images[("g", 1)] == cat.el("e1'")
    ty = mk_theta(TwistContext(cat.aut_y))
    assert ty.images[("g", 0)] == cat.el("e1' + e1*e2'^2")
    tu = mk_theta(TwistContext(cat.aut_u))
    assert tu.images[("g", 0)] == cat.el("e2' + e2*e1'^2")


def test_theta_apply_examples(cat, ctx_x):
    tx = mk_theta(ctx_x)
    assert theta_apply(tx, cat.el("e1*e2'")) == twist_mul(ctx_x, cat.el("e1"), cat.el("e1'"))
    assert theta_apply(tx, cat.el("v")) == cat.el("v")
    ty = mk_theta(TwistContext(cat.aut_y))
    assert theta_apply(ty, cat.el("e1*e2'")) == cat.el("e1*e2'")


def test_membership_examples(cat):
    ty = mk_theta(TwistContext(cat.aut_y))
    y, _ = cat.unit("y")
    target = cat.el("e1'") * y * cat.el("e2")
    assert image_membership(ty, target, 2) == InImage(cat.el("e1*e2'"))
    tx = mk_theta(TwistContext(cat.aut_x))
    assert image_membership(tx, cat.el("v"), 0) == InImage(cat.el("v"))
    tu = mk_theta(TwistContext(cat.aut_u))
    assert image_membership(tu, cat.el(Q2_12), 4) == NotFoundUpTo(4)


def test_criterion_examples(cat):
    rx = check_iso_criterion(mk_theta(TwistContext(cat.aut_x)), 2, 2)
    assert isinstance(rx.verdict, IsomorphismCertified)
    ry = check_iso_criterion(mk_theta(TwistContext(cat.aut_y)), 2, 2)
    assert isinstance(ry.verdict, IsomorphismCertified)
    ru = check_iso_criterion(mk_theta(TwistContext(cat.aut_u)), 2, 4)
    assert ru.verdict == FailsAt(2, "Q_2", (1, 2), 4)
    assert ru.checked[-1][3] == NotFoundUpTo(4)
    # every level-1 entry was found
    assert all(isinstance(r, InImage) for m, _, _, r in ru.checked if m == 1)


def test_criterion_inconclusive(cat):
    r = check_iso_criterion(mk_theta(TwistContext(cat.aut_u)), 1, 2)
    assert r.verdict == InconclusiveUpTo(1, 2)


def test_Q2_display(cat):
    Q2 = iterate_Pm(cat.aut_u.inverse, 2)
    assert Q2 == cat.mat(f"[1, {Q2_12}; -e2*e1', 1 + e2*e2' + e2^2*e1'^2]")


def test_lemma_ei(cat):
    for aut in (cat.aut_x, cat.aut_y, cat.aut_u):
        for m in range(1, 5):
            assert verify_lemma_ei(aut, m)
    bad = InvertiblePair(cat.mat("[v, 0; 0, v]"), cat.mat("[v, 0; 0, v]"), True)
    assert not verify_lemma_ei(cat.aut_u, 2, Q=bad)


def test_lemma_pm(cat):
    x, _ = cat.unit("x")
    u, uinv = cat.unit("u")
    w, winv = cat.unit("w")
    assert verify_lemma_pm(x, x, 1, uinv=x, winv=x)
    assert verify_lemma_pm(x, x, 2, uinv=x, winv=x)
    for m in (1, 2, 3):
        assert verify_lemma_pm(u, w, m, uinv=uinv, winv=winv)
    assert iterate_Pm(cat.f_u, 2) == matrix_iso(unit_power(cat.f_u, u, 2))
    assert iterate_Pm(cat.f_u, 1) == matrix_iso(u)


def _contexts(cat, rng):
    S = random_gl(cat.g, rng)
    return [TwistContext(cat.aut_x), TwistContext(cat.aut_y), TwistContext(cat.aut_u),
            TwistContext(try_fixed_point_shortcut(phi(S)))]


def test_twist_associative(cat):
    rng = random.Random(5)
    ctxs = _contexts(cat, rng)
    for _ in range(200):
        ctx = rng.choice(ctxs)
        a, b, c = (random_homogeneous(cat.g, rng, rng.randint(-2, 2), 2, 3) for _ in range(3))
        assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))


def test_theta_homomorphism_and_grading(cat):
    rng = random.Random(9)
    for ctx in _contexts(cat, rng)[:3]:
        th = mk_theta(ctx)
        for _ in range(20):
            a, b = random_element(cat.g, rng, 2, 2), random_element(cat.g, rng, 2, 2)
            assert th(a * b) == ctx.mul(th(a), th(b))
            d = rng.randint(-2, 2)
            h = random_homogeneous(cat.g, rng, d)
            assert th(h).degree == d


@pytest.mark.parametrize("d", [-2, -1, 0, 1, 2])
def test_theta_injectivity_proxy(cat, d):
    for aut in (cat.aut_x, cat.aut_u):
        th = mk_theta(TwistContext(aut))
        basis = basis_monomials(cat.g, 3, d)
        assert rank([th(Element(cat.g, {b: 1})).terms for b in basis]) == len(basis)


def test_membership_soundness(cat, rng):
    th = mk_theta(TwistContext(cat.aut_u))
    for _ in range(20):
        b = random_element(cat.g, rng, 2, 2)
        res = image_membership(th, th(b), 2)
        assert isinstance(res, InImage)
        assert th(res.witness) == th(b)


def test_scalar_twist_cross_check(cat):
    S = invertible_scalar(cat.g, 0, [[2, 1], [1, 1]])
    ctx = TwistContext(try_fixed_point_shortcut(phi(S)))
    assert ctx.power(4).agrees_with(phi(InvertiblePair(iterate_Pm(phi(S), 4),
                                                       iterate_Pm_inverse(phi(S), 4), True)))
