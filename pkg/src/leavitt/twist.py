"""Zhang twists ``a * b = a sigma^n(b)`` and the embedding ``theta_P``.

The twisted algebra has the same underlying graded space, so twisted elements
are ordinary :class:`Element` values; the context decides which product is
used.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from .algebra import Element, accumulate, basis_monomials, check_ck, generator_images_identity
from .linalg import Eliminator
from .matrix import apply_entrywise, iterate_Pm, iterate_Pm_inverse, mk_invertible
from .morphism import Automorphism, Endo, EndoError, compose_functional, matrix_iso, mk_fu, mk_phi


class TwistError(ValueError):
    pass


class TwistContext:
    """Powers ``sigma^m`` (``m`` in Z) of a graded automorphism, computed lazily.

    The cache is append-only and guarded by a lock, so concurrent readers
    trigger at most one computation per power. Positive powers of a
    matrix-built ``sigma = phi_P`` are cross-checked against ``phi_{P_m}``.
    """

    def __init__(self, sigma: Automorphism, cross_check: bool = True):
        if not sigma.graded:
            raise TwistError("the twisting automorphism must be graded")
        self.sigma = sigma
        self.graph = sigma.graph
        self.cross_check = cross_check
        self._powers: dict = {0: Endo.identity(self.graph), 1: sigma.forward, -1: sigma.inverse}
        self._lock = threading.Lock()

    @classmethod
    def identity(cls, g) -> "TwistContext":
        ident = Endo.identity(g)
        return cls(Automorphism(ident, ident, None), cross_check=False)

    def power(self, m: int) -> Endo:
        hit = self._powers.get(m)
        if hit is not None:
            return hit
        with self._lock:
            step = 1 if m > 0 else -1
            k = max((j for j in self._powers if j * step > 0 and abs(j) <= abs(m)), key=abs)
            while k != m:
                nxt = k + step
                if nxt not in self._powers:
                    self._powers[nxt] = compose_functional(self._powers[step], self._powers[k])
                    if self.cross_check and abs(nxt) <= 4:
                        self._check_power(nxt)
                k = nxt
            return self._powers[m]

    def _check_power(self, m: int):
        base = self.sigma.forward if m > 0 else self.sigma.inverse
        pv = base.provenance
        if pv is None:
            return
        Pm = mk_invertible(iterate_Pm(base, abs(m)), iterate_Pm_inverse(base, abs(m)))
        via = mk_phi(self.graph, pv.v, pv.w, pv.edges, Pm)
        if not via.agrees_with(self._powers[m]):
            raise TwistError(f"sigma^{m} disagrees with phi of the iterated matrix")

    def apply_power(self, m: int, a: Element) -> Element:
        """``sigma^m(a)``; uses the cached power when present, else steps once at a time."""
        f = self._powers.get(m)
        if f is not None:
            return f.apply(a)
        base = self._powers[1 if m > 0 else -1]
        for _ in range(abs(m)):
            a = base.apply(a)
        return a

    def mul(self, a: Element, b: Element) -> Element:
        return twist_mul(self, a, b)


def twist_mul(ctx: TwistContext, a: Element, b: Element) -> Element:
    """``sum_n a_n sigma^n(b)`` over the homogeneous parts ``a_n`` of ``a``."""
    out = Element.zero(ctx.graph)
    if not b:
        return out
    for n, an in a.graded_parts().items():
        out = out + an * (b if n == 0 else ctx.apply_power(n, b))
    return out


class ThetaMap:
    """The graded embedding ``theta_P`` of L into its twist by ``phi_P``.

    Fixes vertices and edges; ``e_i* -> sum_k q^{(-1)}_ik e_k*`` where ``Q``
    is the certified witness (``P phi_P(Q) = I``).
    """

    def __init__(self, ctx: TwistContext, verify: bool = True):
        aut = ctx.sigma
        pv = aut.forward.provenance
        if pv is None or aut.witness is None:
            raise TwistError("theta needs a matrix-built automorphism with its witness")
        g = ctx.graph
        self.ctx = ctx
        self.graph = g
        Qinv = aut.witness.Pinv
        imgs = generator_images_identity(g)
        n = len(pv.edges)
        for i, e in enumerate(pv.edges):
            acc = Element.zero(g)
            for k in range(n):
                acc = acc + Qinv[i, k] * Element.ghost(g, pv.edges[k])
            imgs[("g", e)] = acc
        self.images = imgs
        if verify:
            fails = check_ck(g, imgs, ctx.mul)
            if fails:
                raise TwistError("theta images violate the relations under the twisted product: " + "; ".join(fails[:5]))
        self._cache: dict = {}
        self._spans: dict = {}
        self._lock = threading.Lock()

    def _key_image(self, k) -> Element:
        hit = self._cache.get(k)
        if hit is not None:
            return hit
        p, q, v = k
        if not p and not q:
            img = self.images[("v", v)]
        else:
            img = None
            mul = self.ctx.mul
            for e in p:
                x = self.images[("e", e)]
                img = x if img is None else mul(img, x)
            for e in reversed(q):
                x = self.images[("g", e)]
                img = x if img is None else mul(img, x)
        self._cache[k] = img
        return img

    def apply(self, a: Element) -> Element:
        terms: dict = {}
        for k, c in a.terms.items():
            for k2, c2 in self._key_image(k).terms.items():
                accumulate(terms, k2, c * c2)
        return Element(self.graph, terms)

    __call__ = apply

    def span(self, degree: int, L: int) -> tuple:
        """Eliminator over theta-images of degree-``degree`` basis monomials with |p|,|q| <= L."""
        key = (degree, L)
        with self._lock:
            if key not in self._spans:
                el = Eliminator()
                for b in basis_monomials(self.graph, L, degree):
                    el.add(self._key_image(b).terms, b)
                self._spans[key] = el
            return self._spans[key]


def mk_theta(ctx: TwistContext) -> ThetaMap:
    return ThetaMap(ctx)


def theta_apply(theta: ThetaMap, a: Element) -> Element:
    return theta.apply(a)


@dataclass(frozen=True)
class InImage:
    witness: Element

    def __str__(self):
        return f"InImage({self.witness})"


@dataclass(frozen=True)
class NotFoundUpTo:
    bound: int

    def __str__(self):
        return f"NotFoundUpTo({self.bound})"


def image_membership(theta: ThetaMap, target: Element, L: int):
    """Bounded exact search for ``b`` with ``theta(b) = target``.

    Each homogeneous part is solved against the span of theta-images of
    same-degree basis monomials with ``|p|, |q| <= L``.
    """
    if L < 0:
        raise TwistError("bound must be non-negative")
    g = theta.graph
    witness = Element.zero(g)
    for d, part in target.graded_parts().items():
        combo = theta.span(d, L).solve(part.terms)
        if combo is None:
            return NotFoundUpTo(L)
        for k, c in combo.items():
            witness = witness + Element(g, {k: c})
    if theta.apply(witness) != target:
        raise TwistError("internal error: membership witness does not reproduce the target")
    return InImage(witness)


@dataclass(frozen=True)
class IsomorphismCertified:
    via: str

    def __str__(self):
        return f"IsomorphismCertified({self.via})"


@dataclass(frozen=True)
class FailsAt:
    """An entry not found in Im(theta) up to the search bound."""

    m: int
    matrix: str
    entry: tuple
    bound: int

    def __str__(self):
        return f"FailsAt(m={self.m}, {self.matrix}{self.entry}, not found up to L={self.bound})"


@dataclass(frozen=True)
class InconclusiveUpTo:
    m_max: int
    bound: int

    def __str__(self):
        return f"InconclusiveUpTo(m_max={self.m_max}, L={self.bound})"


@dataclass
class CriterionReport:
    verdict: object
    checked: list = field(default_factory=list)  # (m, matrix name, (i, j), verdict)

    def __str__(self):
        return str(self.verdict)


def criterion_matrices(theta: ThetaMap, m: int) -> list:
    """``[(name, matrix)]`` whose entries the criterion needs at level ``m``.

    Order: ``Q_m``, ``Q_m^{-1}``, ``P_m^{-1}``.
    """
    aut = theta.ctx.sigma
    fP, fQ = aut.forward, aut.inverse
    return [
        ("Q_m", iterate_Pm(fQ, m)),
        ("Q_m^-1", iterate_Pm_inverse(fQ, m)),
        ("P_m^-1", iterate_Pm_inverse(fP, m)),
    ]


def check_iso_criterion(theta: ThetaMap, m_max: int, L: int) -> CriterionReport:
    """Bounded check of the Im(theta) criterion for theta to be onto.

    With ``phi_P(P) = P`` only the entries of ``P`` and ``P^{-1}`` matter and
    a full pass certifies the isomorphism. Otherwise every level ``m`` must
    pass, so a clean run up to ``m_max`` is inconclusive.
    """
    if m_max < 1:
        raise TwistError("m_max must be >= 1")
    aut = theta.ctx.sigma
    fP = aut.forward
    P = fP.matrix
    report = CriterionReport(None)
    if apply_entrywise(fP, P.P) == P.P:
        for name, M in (("P", P.P), ("P^-1", P.Pinv)):
            for ij, a in M.entries():
                res = image_membership(theta, a, L)
                report.checked.append((1, name, (ij[0] + 1, ij[1] + 1), res))
                if isinstance(res, NotFoundUpTo):
                    report.verdict = FailsAt(1, name, (ij[0] + 1, ij[1] + 1), L)
                    return report
        report.verdict = IsomorphismCertified("fixed-point shortcut")
        return report
    for m in range(1, m_max + 1):
        for name, M in criterion_matrices(theta, m):
            name = name.replace("m", str(m)) if name != "P_m^-1" else f"P_{m}^-1"
            for ij, a in M.entries():
                res = image_membership(theta, a, L)
                report.checked.append((m, name, (ij[0] + 1, ij[1] + 1), res))
                if isinstance(res, NotFoundUpTo):
                    report.verdict = FailsAt(m, name, (ij[0] + 1, ij[1] + 1), L)
                    return report
    report.verdict = InconclusiveUpTo(m_max, L)
    return report


# lemma identities

def verify_lemma_ei(aut: Automorphism, m: int, Q=None) -> bool:
    """Check the three generator identities at level ``m`` for every listed edge.

    ``e_i = phi^m(sum_k e_k q^(m)_ki)``, ``e_i* = phi^m(sum_k q^(-m)_ik e_k*)``
    and ``e_i* = phi^-m(sum_k p^(-m)_ik e_k*)``, with ``phi^-m = phi_Q^m``.
    ``Q`` overrides the certified witness (negative controls).
    """
    if m < 1:
        raise TwistError("m must be >= 1")
    fP = aut.forward
    pv = fP.provenance
    g = fP.graph
    try:
        fQ = aut.inverse if Q is None else mk_phi(g, pv.v, pv.w, pv.edges, Q)
    except EndoError:
        return False
    Qm = iterate_Pm(fQ, m)
    Qm_inv = iterate_Pm_inverse(fQ, m)
    Pm_inv = iterate_Pm_inverse(fP, m)
    E = [Element.edge(g, e) for e in pv.edges]
    G = [Element.ghost(g, e) for e in pv.edges]
    n = len(E)
    for i in range(n):
        s1 = sum_elements(g, (E[k] * Qm[k, i] for k in range(n)))
        s2 = sum_elements(g, (Qm_inv[i, k] * G[k] for k in range(n)))
        s3 = sum_elements(g, (Pm_inv[i, k] * G[k] for k in range(n)))
        if iterate_apply(fP, s1, m) != E[i] or iterate_apply(fP, s2, m) != G[i] or iterate_apply(fQ, s3, m) != G[i]:
            return False
    return True


def iterate_apply(f: Endo, a: Element, m: int) -> Element:
    # one factor at a time: cancellation keeps intermediates small
    for _ in range(m):
        a = f.apply(a)
    return a


def sum_elements(g, xs) -> Element:
    out = Element.zero(g)
    for x in xs:
        out = out + x
    return out


def unit_power(fu: Endo, u: Element, m: int) -> Element:
    """``u_m = f_u^{m-1}(u) ... f_u(u) u``."""
    acc = u
    cur = u
    for _ in range(m - 1):
        cur = fu.apply(cur)
        acc = cur * acc
    return acc


def unit_power_inverse(fu: Endo, uinv: Element, m: int) -> Element:
    """``u_m^{-1} = u^{-1} f_u(u^{-1}) ... f_u^{m-1}(u^{-1})``."""
    acc = uinv
    cur = uinv
    for _ in range(m - 1):
        cur = fu.apply(cur)
        acc = acc * cur
    return acc


def verify_lemma_pm(u: Element, w: Element, m: int, *, uinv: Element, winv: Element) -> bool:
    """``P_m = (e_i* u_m e_j)`` and ``P_m^{-1} = (e_i* u_m^{-1} e_j)``, and the same for ``w``.

    ``w`` is the witness unit (``f_u(w) = u^{-1}``); inverses are passed in
    because ghost images of ``f_u`` need ``u^{-1}``.
    """
    if m < 1:
        raise TwistError("m must be >= 1")
    try:
        fu = mk_fu(u, uinv)
        fw = mk_fu(w, winv)
    except EndoError:
        return False
    if fu.apply(w) != uinv:
        return False
    for f, a, ainv in ((fu, u, uinv), (fw, w, winv)):
        if iterate_Pm(f, m) != matrix_iso(unit_power(f, a, m)):
            return False
        if iterate_Pm_inverse(f, m) != matrix_iso(unit_power_inverse(f, ainv, m)):
            return False
    return True
