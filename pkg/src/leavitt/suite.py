"""Replays every worked example and lemma identity as a named pass/fail check."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .algebra import Element, in_A_subalgebra
from .catalog import catalog
from .chenmod import (
    ModuleVector, No, Yes, annihilator_check, canonicalize_path, epsilon, iso_test_irrational,
    iso_test_rational, monomial_decompose, oracle_path, phi_scalar, sn_act_matrix, sn_act_path, twisted_act,
)
from .field import characteristic, reciprocal, scalar
from .graph import Path, rotations
from .matrix import U, apply_entrywise, invertible_scalar, iterate_Pm, mk_invertible, star_product
from .morphism import (
    WitnessRejected, certify_automorphism, compose, compose_functional, extract_matrix, inner, matrix_iso,
    matrix_iso_inv, mk_fu, phi, try_fixed_point_shortcut, unit_of_endo,
)
from .twist import (
    FailsAt, InImage, IsomorphismCertified, NotFoundUpTo, TwistContext, check_iso_criterion, image_membership,
    mk_theta, verify_lemma_ei, verify_lemma_pm,
)


class CheckFailed(AssertionError):
    pass


def expect(cond: bool, msg: str) -> None:
    if not cond:
        raise CheckFailed(msg)


def expect_eq(a, b, what: str) -> None:
    if a != b:
        raise CheckFailed(f"{what}: got {a}, expected {b}")


@dataclass
class CheckResult:
    name: str
    status: str  # PASS, FAIL, SKIP
    elapsed: float
    detail: str = ""

    def line(self, timing: bool = True) -> str:
        t = f" [{self.elapsed:.3f}s]" if timing else ""
        d = f"  {self.detail}" if self.detail else ""
        return f"{self.status:<4} {self.name}{t}{d}"


@dataclass
class Report:
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status != "FAIL" for r in self.results)

    def render(self, timing: bool = True) -> str:
        lines = [r.line(timing) for r in self.results]
        counts = {s: sum(r.status == s for r in self.results) for s in ("PASS", "FAIL", "SKIP")}
        lines.append(f"{counts['PASS']} passed, {counts['FAIL']} failed, {counts['SKIP']} skipped")
        return "\n".join(lines)


CHECKS: dict[str, tuple[Callable[[], str], bool]] = {}


def check(name: str, rational_only: bool = False):
    def deco(fn):
        CHECKS[name] = (fn, rational_only)
        return fn
    return deco


@check("example-auto-1")
def _example_auto_1() -> str:
    c = catalog()
    x, _ = c.unit("x")
    v = c.el("v")
    expect_eq(x * x, v, "x^2")
    f = c.f_x
    expect_eq([str(s) for s in f.describe()], ["e1 -> e2", "e2 -> e1", "e1' -> e2'", "e2' -> e1'"], "f_x images")
    P = c.mat("[0, v; v, 0]")
    pair = extract_matrix(c.g, f)
    expect_eq(pair.P, P, "extract_matrix(f_x)")
    expect(pair.degree_zero, "P should be degree 0")
    expect_eq(matrix_iso(x), P, "matrix_iso(x)")
    expect_eq(apply_entrywise(f, P), P, "f_x(P)")
    aut = try_fixed_point_shortcut(f)
    expect(aut is not None, "fixed-point shortcut did not certify f_x")
    expect(compose_functional(f, f).is_identity(), "f_x is not an involution")
    return "x^2 = v; P = [0, v; v, 0]; automorphism via shortcut"


@check("example-auto-2")
def _example_auto_2() -> str:
    c = catalog()
    y, yi = c.unit("y")
    one = c.el("v")
    expect(y * yi == one and yi * y == one, "y * y^-1 != v")
    f = c.f_y
    want = {"e1": "e1", "e2": "e2 + e1^2*e2'", "e1'": "e1' - e1*e2'^2", "e2'": "e2'"}
    got = dict(s.split(" -> ") for s in f.describe())
    for k, val in want.items():
        expect_eq(c.el(got[k]), c.el(val), f"f_y({k})")
    p = c.el("e1*e2'")
    expect(in_A_subalgebra(p, 2), "e1e2* should lie in A(e1, e2)")
    Up = c.U_p
    expect_eq(Up.Pinv, U(-p).P, "(U_p)^-1")
    expect(phi(Up).agrees_with(f), "f_y != phi_{U_p}")
    expect_eq(extract_matrix(c.g, f).P, Up.P, "extract_matrix(f_y)")
    q = c.el("e1^2*e2'")
    expect_eq(Up.P * U(q).P, U(p + q).P, "U_p U_q")
    return "y unit; f_y = phi_{U_{e1e2*}}"


@check("example-auto-3")
def _example_auto_3() -> str:
    c = catalog()
    u, ui = c.unit("u")
    w, wi = c.unit("w")
    one = c.el("v")
    expect(u * ui == one and ui * u == one, "u * u^-1 != v")
    f = c.f_u
    want = {"e1": "e2 + e1^2*e2'", "e2": "e1", "e1'": "e2'", "e2'": "e1' - e1*e2'^2"}
    got = dict(s.split(" -> ") for s in f.describe())
    for k, val in want.items():
        expect_eq(c.el(got[k]), c.el(val), f"f_u({k})")
    expect_eq(f(w), ui, "f_u(w)")
    aut = certify_automorphism(f, matrix_iso_pair(w, wi))
    fw_want = {"e1": "e2", "e2": "e1 - e2^2*e1'", "e1'": "e2' + e2*e1'^2", "e2'": "e1'"}
    got = dict(s.split(" -> ") for s in aut.inverse.describe())
    for k, val in fw_want.items():
        expect_eq(c.el(got[k]), c.el(val), f"f_w({k})")
    expect(f(u) != u, "f_u(u) should differ from u")
    expect(try_fixed_point_shortcut(f) is None, "shortcut should not apply to f_u")
    expect_eq(u.star(), c.el("e2*e1' + e1*e2' + e1*e2*e1'^2"), "star(u)")
    # f(P) = P iff f(u) = u, on x and on u
    for name, fn in (("x", c.f_x), ("u", f)):
        a, _ = c.unit(name)
        lhs = apply_entrywise(fn, fn.matrix.P) == fn.matrix.P
        rhs = fn(a) == a
        expect(lhs == rhs, f"f(P) = P and f(unit) = unit disagree for {name}")
        expect(lhs == (name == "x"), f"unexpected fixed-point status for {name}")
    return "f_u(w) = u^-1 certifies; f_u(u) != u"


def matrix_iso_pair(s: Element, sinv: Element):
    return mk_invertible(matrix_iso(s), matrix_iso(sinv))


@check("exa-theta-1")
def _exa_theta_1() -> str:
    c = catalog()
    th = mk_theta(TwistContext(c.aut_x))
    expect_eq(th.images[("g", 0)], c.el("e2'"), "theta_x(e1*)")
    expect_eq(th.images[("g", 1)], c.el("e1'"), "theta_x(e2*)")
    r = check_iso_criterion(th, 2, 2)
    expect(isinstance(r.verdict, IsomorphismCertified), f"theta_x verdict {r.verdict}")
    return str(r.verdict)


@check("exa-theta-2")
def _exa_theta_2() -> str:
    c = catalog()
    th = mk_theta(TwistContext(c.aut_y))
    expect_eq(th.images[("g", 0)], c.el("e1' + e1*e2'^2"), "theta_y(e1*)")
    y, _ = c.unit("y")
    target = c.el("e1'") * y * c.el("e2")
    expect_eq(target, c.el("e1*e2'"), "e1* y e2")
    res = image_membership(th, target, 2)
    expect(isinstance(res, InImage) and res.witness == c.el("e1*e2'"), f"membership gave {res}")
    r = check_iso_criterion(th, 2, 2)
    expect(isinstance(r.verdict, IsomorphismCertified), f"theta_y verdict {r.verdict}")
    return str(r.verdict)


@check("exa-theta-3")
def _exa_theta_3() -> str:
    c = catalog()
    aut = c.aut_u
    th = mk_theta(TwistContext(aut))
    expect_eq(th.images[("g", 0)], c.el("e2' + e2*e1'^2"), "theta_u(e1*)")
    expect_eq(th.images[("g", 1)], c.el("e1'"), "theta_u(e2*)")
    expect_eq(aut.forward.matrix.Pinv, c.mat("[0, v; v, -e1*e2']"), "P^-1")
    expect_eq(aut.witness.P, c.mat("[0, v; v, -e2*e1']"), "Q")
    expect_eq(aut.witness.Pinv, c.mat("[e2*e1', v; v, 0]"), "Q^-1")
    Q2 = iterate_Pm(aut.inverse, 2)
    want = c.mat("[1, -e1*e2' - e1*e2*e1'^2 + e2^2*e1'*e2'; -e2*e1', 1 + e2*e2' + e2^2*e1'^2]")
    expect_eq(Q2, want, "Q_2")
    expect_eq(Q2, aut.witness.P * apply_entrywise(aut.inverse, aut.witness.P), "Q_2 = Q f_w(Q)")
    expect_eq(th(c.el("-e1*e2'")), c.el("-e1*e2'"), "theta_u(-e1e2*)")
    res = image_membership(th, Q2[0, 1], 4)
    expect(res == NotFoundUpTo(4), f"membership of Q_2(1,2) gave {res}")
    r = check_iso_criterion(th, 2, 4)
    expect(isinstance(r.verdict, FailsAt) and (r.verdict.m, r.verdict.entry) == (2, (1, 2)), f"criterion gave {r.verdict}")
    return f"Q_2 matches; {res}; {r.verdict}"


@check("lemma-ei")
def _lemma_ei() -> str:
    c = catalog()
    for name, aut in (("x", c.aut_x), ("y", c.aut_y), ("u", c.aut_u)):
        for m in range(1, 5):
            expect(verify_lemma_ei(aut, m), f"identities fail for f_{name} at m={m}")
    bogus = invertible_scalar(c.g, 0, [[1, 0], [0, 1]])
    expect(not verify_lemma_ei(c.aut_u, 2, Q=bogus), "corrupted witness passed")
    return "f_x, f_y, f_u for m <= 4; corrupted witness rejected"


@check("lemma-pm")
def _lemma_pm() -> str:
    c = catalog()
    x, xi = c.unit("x")
    u, ui = c.unit("u")
    w, wi = c.unit("w")
    for m in range(1, 4):
        expect(verify_lemma_pm(x, x, m, uinv=xi, winv=xi), f"x fails at m={m}")
        expect(verify_lemma_pm(u, w, m, uinv=ui, winv=wi), f"u fails at m={m}")
    return "x and u for m <= 3"


@check("cuntz-correspondence")
def _cuntz() -> str:
    c = catalog()
    for name in ("x", "y", "u", "w"):
        a, ai = c.unit(name)
        f = c.fu(name)
        expect_eq(unit_of_endo(f), a, f"unit of f_{name}")
        expect_eq(f.matrix.P, matrix_iso(a), f"matrix of f_{name}")
        expect_eq(matrix_iso_inv(matrix_iso(a)), a, f"matrix round trip for {name}")
    # f_a f_b = f_{f_a(b) a}
    for a_name, b_name in (("u", "w"), ("x", "u"), ("y", "x"), ("u", "y")):
        a, ai = c.unit(a_name)
        b, bi = c.unit(b_name)
        fa, fb = c.fu(a_name), c.fu(b_name)
        prod = fa(b) * a
        prod_inv = ai * fa(bi)
        expect(compose_functional(fa, fb).agrees_with(mk_fu(prod, prod_inv)), f"f_{a_name} f_{b_name} composition rule")
    u, ui = c.unit("u")
    tau = inner(u, ui)
    e1 = c.el("e1")
    expect_eq(tau(e1), ui * e1 * u, "tau_u(e1)")
    if characteristic() != 2:
        two = c.el("2*v")
        half = two.scale(reciprocal(scalar(4)))
        expect(inner(two, half).is_identity(), "tau_{2v} is not the identity")
    x, _ = c.unit("x")
    expect_eq(inner(x, x)(e1), x * e1 * x, "tau_x(e1)")
    s = c.el("e1*e2' - 3*e2^2*e1' + v")
    t = c.el("e2*e1'^2 + e1")
    expect_eq(matrix_iso(s * t), matrix_iso(s) * matrix_iso(t), "matrix_iso multiplicative")
    return "f_u = phi_(e_i* u e_j); composition rule; inner automorphisms"


@check("anick-monoid")
def _anick() -> str:
    c = catalog()
    g = c.g
    p = c.el("e1*e2'")
    qs = [c.el("e1^2*e2'"), c.el("e2'^2"), c.el("e1 - e1*e2'")]
    for q in qs:
        expect(in_A_subalgebra(q, 2), f"{q} should lie in A(e1, e2)")
        Up, Uq = U(p), U(q)
        fp = phi(Up)
        star = star_product(Up, Uq, fp)
        expect_eq(star.P, U(p + q).P, f"U_p * U_q for q = {q}")
        expect(compose(fp, phi(Uq)).agrees_with(phi(U(p + q))), f"phi_U_p phi_U_q for q = {q}")
    A = invertible_scalar(g, 0, [[2, 1], [1, 1]])
    B = invertible_scalar(g, 0, [[0, 1], [1, 3]])
    expect_eq(star_product(A, B, phi(A)).P, A.P * B.P, "P * Q for scalar matrices")
    return "U_p * U_q = U_{p+q}; scalar P * Q = PQ"


@check("chen-annihilators", rational_only=True)
def _chen() -> str:
    c = catalog()
    g = c.g
    Ps = [[[1, 0], [0, 1]], [[0, 1], [1, 0]], [[2, 1], [1, 1]], [[1, "1/2"], ["1/3", 1]]]
    for P in Ps:
        f = phi_scalar(g, P)
        for cyc in (("e1",), ("e1", "e2"), ("e1", "e1", "e2")):
            cinf = canonicalize_path(g, (), cyc)
            cel = Element.path(g, *cyc)
            r = c.el("v") - f(cel)
            expect(not twisted_act(P, r, ModuleVector.of(cinf)), f"(v - phi_P(c)) c^inf != 0 for c={cyc}, P={P}")
    tm = oracle_path(g, "thue-morse", ["e1", "e2"])
    for P in Ps:
        expect(annihilator_check(P, tm, 5), f"eps annihilators fail for P={P}")
    expect_eq(epsilon(canonicalize_path(g, (), ("e1", "e2")), 2), c.el("e1*e1' - e1^2*e1'^2"), "eps_2")
    corrupt = lambda a, m: epsilon(a, m) if m != 2 else epsilon(a.shift(1), 2)
    expect(not annihilator_check(Ps[0], tm, 5, eps=corrupt), "corrupted eps passed")
    return "annihilators of c^inf and of the Thue-Morse path"


@check("irrep-decisions")
def _irrep() -> str:
    c = catalog()
    g = c.g
    I = [[1, 0], [0, 1]]
    S = [[0, 1], [1, 0]]
    c12, c21 = Path.of(g, "e1", "e2"), Path.of(g, "e2", "e1")
    expect(iso_test_rational(rotations(c12), I, rotations(c21), I), "e1e2 vs e2e1")
    expect(not iso_test_rational(Path.of(g, "e1"), I, Path.of(g, "e2"), I), "e1 vs e2 with P = Q = I")
    expect(iso_test_rational(Path.of(g, "e1"), S, Path.of(g, "e2"), I), "e1 vs e2 with P = swap")
    dec = monomial_decompose(S)
    expect(dec is not None and dec.sigma == (2, 1), f"decomposition of the swap: {dec}")
    expect(monomial_decompose([[1, 1], [0, 1]]) is None, "[[1,1],[0,1]] is not monomial")
    expect_eq(sn_act_matrix((2, 1), I), S, "(1 2) . I")
    tm = oracle_path(g, "thue-morse", ["e1", "e2"])
    fib = oracle_path(g, "fibonacci-word", ["e1", "e2"])
    expect(isinstance(iso_test_irrational(tm, I, tm, I), Yes), "alpha = beta, P = Q")
    expect(isinstance(iso_test_irrational(tm, S, sn_act_path((2, 1), tm), I), Yes), "swap relabel")
    expect(isinstance(iso_test_irrational(tm, [[1, 1], [0, 1]], tm, [[1, 2], [0, 1]]), No), "unitriangular P != Q")
    expect(isinstance(iso_test_irrational(tm, I, fib, I), No), "Thue-Morse vs Fibonacci")
    expect(isinstance(iso_test_irrational(tm, I, tm.shift(3).prepend((1,)), I), Yes), "tail-equivalent beta")
    return "rational and irrational decision rules"


def verify_paper(only: list[str] | None = None, jobs: int = 1) -> Report:
    """Run the named checks (all by default); results are ordered by name."""
    names = sorted(CHECKS) if not only else list(only)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown check(s): {', '.join(unknown)}; known: {', '.join(sorted(CHECKS))}")

    def run(name: str) -> CheckResult:
        fn, rational_only = CHECKS[name]
        if rational_only and characteristic() != 0:
            return CheckResult(name, "SKIP", 0.0, "rational-only check skipped in prime-field mode")
        t = time.perf_counter()
        try:
            detail = fn()
            status = "PASS"
        except (CheckFailed, WitnessRejected, ValueError, ArithmeticError) as exc:
            detail, status = f"{type(exc).__name__}: {exc}", "FAIL"
        return CheckResult(name, status, time.perf_counter() - t, detail)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(run, names))
    else:
        results = [run(n) for n in names]
    return Report(sorted(results, key=lambda r: r.name))
