import random

import pytest

from leavitt.algebra import Element, basis_monomials
from leavitt.linalg import rank
from leavitt.matrix import AlgMatrix, U, apply_entrywise, invertible_scalar, mk_invertible
from leavitt.morphism import (
    Endo, EndoError, WitnessRejected, certify_automorphism, compose, compose_functional, extract_matrix, inner,
    matrix_iso, matrix_iso_inv, mk_fu, mk_phi, phi, try_fixed_point_shortcut, unit_inverse, unit_of_endo,
)
from leavitt.sampling import random_A_element, random_element, random_gl, random_homogeneous, random_U


def images(f):
    return dict(line.split(" -> ") for line in f.describe())


def test_mk_phi_swap(cat):
    f = phi(mk_invertible(cat.mat("[0, v; v, 0]"), cat.mat("[0, v; v, 0]")))
    assert images(f) == {"e1": "e2", "e2": "e1", "e1'": "e2'", "e2'": "e1'"}
    assert f.graded


def test_mk_phi_identity_and_anick(cat):
    I = invertible_scalar(cat.g, 0, [[1, 0], [0, 1]])
    assert phi(I).is_identity()
    f = phi(cat.U_p)
    assert f.edge_image("e2") == cat.el("e2 + e1^2*e2'")
    assert f.ghost_image("e1") == cat.el("e1' - e1*e2'^2")


def test_mk_phi_edge_constraints(sink_graph):
    g = sink_graph
    P = invertible_scalar(g, g.vertex("b"), [[1]])
    with pytest.raises(EndoError):
        mk_phi(g, "a", "b", ["g"], P)
    with pytest.raises(EndoError):
        mk_phi(g, "a", "b", ["f", "f"], invertible_scalar(g, g.vertex("b"), [[1, 0], [0, 1]]))
    f = mk_phi(g, "a", "b", ["f"], invertible_scalar(g, g.vertex("b"), [[3]]))
    assert f.edge_image("f") == Element.edge(g, "f").scale(3)
    assert f.ghost_image("g") == Element.ghost(g, "g")


def test_mk_phi_bad_pair_fails_ck(cat):
    # a pair that is not inverse on the algebra level is caught by the relation check
    from leavitt.matrix import InvertiblePair

    P = cat.mat("[v, e1; 0, v]")
    bogus = InvertiblePair(P, P, False)
    with pytest.raises(EndoError):
        phi(bogus)


def test_apply_examples(cat):
    assert cat.f_x(cat.el("e1*e2'")) == cat.el("e2*e1'")
    w, _ = cat.unit("w")
    _, uinv = cat.unit("u")
    assert cat.f_u(w) == uinv
    a = random_element(cat.g, random.Random(1))
    assert Endo.identity(cat.g)(a) == a


def test_compose_examples(cat, rng):
    fP = cat.f_x
    I = invertible_scalar(cat.g, 0, [[1, 0], [0, 1]])
    assert compose(fP, phi(I)).agrees_with(fP)
    with pytest.raises(EndoError):
        compose(fP, Endo.identity(cat.g))
    assert compose(fP, fP).is_identity()
    p, q = random_A_element(rng), random_A_element(rng)
    assert compose(phi(U(p)), phi(U(q))).agrees_with(phi(U(p + q)))


def test_certify_examples(cat):
    P = cat.f_x.matrix
    assert certify_automorphism(cat.f_x, P) is not None
    aut = certify_automorphism(cat.f_u, cat.f_w.matrix)
    assert aut.inverse.agrees_with(cat.f_w)
    I = invertible_scalar(cat.g, 0, [[1, 0], [0, 1]])
    assert certify_automorphism(phi(I), I).inverse.is_identity()
    with pytest.raises(WitnessRejected):
        certify_automorphism(cat.f_u, I)


def test_shortcut(cat, rng):
    assert try_fixed_point_shortcut(cat.f_x) is not None
    assert try_fixed_point_shortcut(cat.f_u) is None
    S = random_gl(cat.g, rng)
    aut = try_fixed_point_shortcut(phi(S))
    assert aut is not None
    assert compose_functional(aut.forward, aut.inverse).is_identity()


def test_extract_matrix(cat):
    assert extract_matrix(cat.g, cat.f_x).P == cat.mat("[0, v; v, 0]")
    assert extract_matrix(cat.g, Endo.identity(cat.g)).P == AlgMatrix.identity(cat.g, 0, 2)
    assert extract_matrix(cat.g, cat.f_y).P == cat.U_p.P


def test_mk_fu(cat):
    x, _ = cat.unit("x")
    assert images(mk_fu(x, x)) == {"e1": "e2", "e2": "e1", "e1'": "e2'", "e2'": "e1'"}
    v = cat.el("v")
    assert mk_fu(v, v).is_identity()
    assert cat.f_u.edge_image("e1") == cat.el("e2 + e1^2*e2'")
    with pytest.raises(EndoError):
        mk_fu(cat.el("e1*e2'"), cat.el("e2*e1'"))
    u, uinv = cat.unit("u")
    assert mk_fu(u, uinv).agrees_with(phi(mk_invertible(matrix_iso(u), matrix_iso(uinv))))


def test_unit_of_endo(cat):
    assert unit_of_endo(cat.f_x) == cat.unit("x")[0]
    assert unit_of_endo(Endo.identity(cat.g)) == cat.el("v")
    assert unit_of_endo(cat.f_u) == cat.unit("u")[0]


def test_inner(cat):
    two, half = cat.el("2*v"), cat.el("1/2*v")
    assert inner(two, half).is_identity()
    x, _ = cat.unit("x")
    assert inner(x, x).edge_image("e1") == x * cat.el("e1") * x
    u, uinv = cat.unit("u")
    tau = inner(u, uinv)
    s = cat.el("0")
    for i in ("e1", "e2"):
        s = s + cat.el(i) * u * cat.el(i + "'")
    t = uinv * s
    assert tau.agrees_with(mk_fu(t, unit_inverse(t)))


def test_matrix_iso(cat, rng):
    assert matrix_iso(cat.el("v")) == AlgMatrix.identity(cat.g, 0, 2)
    assert matrix_iso(cat.unit("x")[0]) == cat.mat("[0, v; v, 0]")
    for _ in range(30):
        s, t = random_element(cat.g, rng), random_element(cat.g, rng)
        assert matrix_iso_inv(matrix_iso(s)) == s
        assert matrix_iso(s * t) == matrix_iso(s) * matrix_iso(t)


def test_cuntz_composition(cat):
    # f_u f_w = f_{f_u(w) u}
    for a, b in (("x", "u"), ("u", "w"), ("y", "x"), ("w", "y")):
        u, uinv = cat.unit(a)
        w, winv = cat.unit(b)
        fu, fw = mk_fu(u, uinv), mk_fu(w, winv)
        s = fu(w) * u
        sinv = uinv * fu(winv)
        assert compose_functional(fu, fw).agrees_with(mk_fu(s, sinv))


def test_fixed_point_biconditional(cat):
    for name, expect in (("x", True), ("u", False)):
        u, uinv = cat.unit(name)
        f = mk_fu(u, uinv)
        assert (apply_entrywise(f, f.matrix.P) == f.matrix.P) is expect
        assert (f(u) == u) is expect


def _endos(cat, rng):
    return [cat.f_x, cat.f_y, cat.f_u, phi(random_gl(cat.g, rng)), phi(random_U(rng))]


def test_homomorphism_law(cat, rng):
    fs = _endos(cat, rng)
    for _ in range(200):
        f = rng.choice(fs)
        a, b = random_element(cat.g, rng, 3, 2), random_element(cat.g, rng, 3, 2)
        assert f(a * b) == f(a) * f(b)
        assert f(a + b) == f(a) + f(b)


def test_compose_matches_functional(cat, rng):
    fs = _endos(cat, rng)
    for _ in range(20):
        f, h = rng.choice(fs), rng.choice(fs)
        fh = compose(f, h)
        a = random_element(cat.g, rng, 3, 2)
        assert fh(a) == f(h(a))


def test_graded_flag(cat, rng):
    for f in _endos(cat, rng):
        if not f.graded:
            # U_p with p of nonzero degree
            assert not f.matrix.degree_zero
            continue
        for _ in range(10):
            d = rng.randint(-2, 2)
            a = random_homogeneous(cat.g, rng, d)
            assert f(a).degree == d


def test_ungraded_phi(cat):
    # P with a degree-1 entry gives a non-graded endomorphism
    P = cat.mat("[v, e1*e1*e2'; 0, v]")
    Pinv = cat.mat("[v, -e1*e1*e2'; 0, v]")
    f = phi(mk_invertible(P, Pinv))
    assert not f.graded


def test_injectivity_proxy(cat, rng):
    basis = basis_monomials(cat.g, 2)
    for f in _endos(cat, rng):
        imgs = [f(Element(cat.g, {b: 1})).terms for b in basis]
        assert rank(imgs) == len(basis)


def test_uniqueness_round_trip(cat, rng):
    for _ in range(10):
        P = random_U(rng) if rng.random() < 0.5 else random_gl(cat.g, rng)
        assert extract_matrix(cat.g, phi(P)).P == P.P


def test_unit_inverse_search(cat):
    u, uinv = cat.unit("u")
    assert unit_inverse(u) == uinv
    assert unit_inverse(cat.el("e1*e1'")) is None
