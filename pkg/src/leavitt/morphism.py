"""Endomorphisms of L_K(E) given by generator images.

Matrix-built endomorphisms ``phi_P`` send ``e_i`` to ``sum_k e_k p_ki`` and
``e_i*`` to ``sum_k p'_ik e_k*`` for a verified invertible pair ``(P, P')``
over the corner at the common range of the listed edges. Every constructor
re-checks the Cuntz-Krieger relations on the images.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Element, accumulate, check_ck, generator_images_identity
from .graph import Graph
from .matrix import AlgMatrix, InvertiblePair, MatrixError, apply_entrywise, mk_invertible, star_product

_APPLY_CACHE_LIMIT = 50_000


class EndoError(ValueError):
    pass


@dataclass(frozen=True)
class Provenance:
    v: int
    w: int
    edges: tuple
    matrix: InvertiblePair


class Endo:
    """A homomorphism determined by images of vertices, edges and ghost edges."""

    def __init__(self, graph: Graph, images: dict, provenance: Provenance | None = None, verify: bool = True, label: str = ""):
        self.graph = graph
        self.images = dict(images)
        self.provenance = provenance
        self.label = label
        missing = [k for k in generator_images_identity(graph) if k not in self.images]
        if missing:
            raise EndoError(f"missing generator images: {missing}")
        if verify:
            fails = check_ck(graph, self.images)
            if fails:
                raise EndoError("generator images violate the Cuntz-Krieger relations: " + "; ".join(fails[:5]))
        self.graded = self._graded()
        self._cache: dict = {}

    def _graded(self) -> bool:
        for (kind, _), a in self.images.items():
            want = {"v": 0, "e": 1, "g": -1}[kind]
            if not a.degrees <= {want}:
                return False
        return True

    @classmethod
    def identity(cls, g: Graph) -> "Endo":
        return cls(g, generator_images_identity(g), verify=False, label="id")

    @classmethod
    def from_named_images(cls, g: Graph, named: dict) -> "Endo":
        """Images keyed by generator name (``"e1"``, ``"e1'"``, ``"v"``); others fixed."""
        imgs = generator_images_identity(g)
        for name, a in named.items():
            if name.endswith("'"):
                imgs[("g", g.edge(name[:-1]))] = a
            elif name in g.vindex:
                imgs[("v", g.vindex[name])] = a
            else:
                imgs[("e", g.edge(name))] = a
        return cls(g, imgs)

    @property
    def matrix(self) -> InvertiblePair | None:
        return self.provenance.matrix if self.provenance else None

    def edge_image(self, name: str | int) -> Element:
        i = self.graph.edge(name) if isinstance(name, str) else name
        return self.images[("e", i)]

    def ghost_image(self, name: str | int) -> Element:
        i = self.graph.edge(name) if isinstance(name, str) else name
        return self.images[("g", i)]

    def _key_image(self, k) -> Element:
        hit = self._cache.get(k)
        if hit is not None:
            return hit
        p, q, v = k
        if not p and not q:
            img = self.images[("v", v)]
        else:
            img = None
            for e in p:
                x = self.images[("e", e)]
                img = x if img is None else img * x
            for e in reversed(q):
                x = self.images[("g", e)]
                img = x if img is None else img * x
        if len(self._cache) > _APPLY_CACHE_LIMIT:
            self._cache.clear()
        self._cache[k] = img
        return img

    def apply(self, a: Element) -> Element:
        if a.graph != self.graph:
            raise EndoError("element and endomorphism live over different graphs")
        terms: dict = {}
        for k, c in a.terms.items():
            for k2, c2 in self._key_image(k).terms.items():
                accumulate(terms, k2, c * c2)
        return Element(self.graph, terms)

    __call__ = apply

    def agrees_with(self, other: "Endo") -> bool:
        return self.images == other.images

    def disagreements(self, other: "Endo") -> list:
        return [k for k in self.images if self.images[k] != other.images[k]]

    def is_identity(self) -> bool:
        return self.images == generator_images_identity(self.graph)

    def describe(self) -> list[str]:
        g = self.graph
        lines = []
        for e in range(g.num_edges):
            lines.append(f"{g.edge_name(e)} -> {self.images[('e', e)]}")
        for e in range(g.num_edges):
            lines.append(f"{g.edge_name(e)}' -> {self.images[('g', e)]}")
        return lines

    def __repr__(self):
        return f"Endo({self.label or '; '.join(self.describe())})"


def compose_functional(f: Endo, g: Endo) -> Endo:
    """``f o g`` computed by applying ``f`` to the images of ``g``."""
    if f.graph != g.graph:
        raise EndoError("graph mismatch")
    return Endo(f.graph, {k: f.apply(a) for k, a in g.images.items()}, verify=False)


def power(f: Endo, m: int) -> Endo:
    if m < 0:
        raise EndoError("negative powers need an automorphism")
    out = Endo.identity(f.graph)
    for _ in range(m):
        out = compose_functional(f, out)
    return out


def mk_phi(g: Graph, v, w, edges, P: InvertiblePair) -> Endo:
    """The endomorphism ``phi_P`` fixing vertices and edges off the list."""
    vi = g.vertex(v) if isinstance(v, str) else v
    wi = g.vertex(w) if isinstance(w, str) else w
    es = tuple(g.edge(e) if isinstance(e, str) else e for e in edges)
    if len(set(es)) != len(es):
        raise EndoError("listed edges must be distinct")
    for e in es:
        if g.src[e] != vi or g.rng[e] != wi:
            raise EndoError(f"edge {g.edge_name(e)} does not run from {g.vertex_name(vi)} to {g.vertex_name(wi)}")
    if P.w != wi or P.n != len(es) or P.graph != g:
        raise EndoError("matrix size or corner does not fit the edge list")
    imgs = generator_images_identity(g)
    E = [Element.edge(g, e) for e in es]
    G = [Element.ghost(g, e) for e in es]
    n = len(es)
    for i, e in enumerate(es):
        imgs[("e", e)] = _sum(g, (E[k] * P.P[k, i] for k in range(n)))
        imgs[("g", e)] = _sum(g, (P.Pinv[i, k] * G[k] for k in range(n)))
    try:
        f = Endo(g, imgs, Provenance(vi, wi, es, P))
    except EndoError as exc:
        raise EndoError(f"phi_P is not a homomorphism (bad inverse pair?): {exc}") from None
    if f.graded != P.degree_zero:
        raise EndoError("graded flag disagrees with the degree-0 flag of P")
    return f


def phi(P: InvertiblePair) -> Endo:
    """``phi_P`` on a rose graph using all its edges."""
    g = P.graph
    if g.num_vertices != 1:
        raise EndoError("phi(P) shorthand is for rose graphs; use mk_phi")
    return mk_phi(g, 0, 0, range(g.num_edges), P)


def _sum(g: Graph, xs) -> Element:
    out = Element.zero(g)
    for x in xs:
        out = out + x
    return out


def _same_frame(f: Endo, h: Endo):
    pf, ph = f.provenance, h.provenance
    if pf is None or ph is None:
        raise EndoError("composition via the star product needs matrix-built endomorphisms")
    if (pf.v, pf.w, pf.edges) != (ph.v, ph.w, ph.edges):
        raise EndoError("incompatible provenance (different vertex/edge data)")
    return pf


def compose(f: Endo, h: Endo) -> Endo:
    """``phi_P o phi_Q = phi_{P phi_P(Q)}``, cross-checked on generators."""
    pf = _same_frame(f, h)
    R = star_product(pf.matrix, h.provenance.matrix, f)
    out = mk_phi(f.graph, pf.v, pf.w, pf.edges, R)
    direct = compose_functional(f, h)
    if not out.agrees_with(direct):
        raise EndoError("star-product composition disagrees with functional composition")
    return out


@dataclass(frozen=True)
class Automorphism:
    forward: Endo
    inverse: Endo
    witness: InvertiblePair

    @property
    def graph(self) -> Graph:
        return self.forward.graph

    @property
    def graded(self) -> bool:
        return self.forward.graded

    def apply(self, a: Element) -> Element:
        return self.forward.apply(a)

    __call__ = apply

    def invert(self) -> "Automorphism":
        return Automorphism(self.inverse, self.forward, self.forward.matrix)


class WitnessRejected(EndoError):
    pass


def certify_automorphism(f: Endo, Q: InvertiblePair) -> Automorphism:
    """Accept ``Q`` iff ``phi_P(Q) = P^{-1}``; then ``phi_P^{-1} = phi_Q``."""
    pf = f.provenance
    if pf is None:
        raise EndoError("certification needs a matrix-built endomorphism")
    if Q.n != pf.matrix.n or Q.w != pf.w:
        raise EndoError("witness size or corner mismatch")
    image = apply_entrywise(f, Q.P)
    if image != pf.matrix.Pinv:
        for (i, j), a in image.entries():
            b = pf.matrix.Pinv[i, j]
            if a != b:
                raise WitnessRejected(f"phi_P(Q) differs from P^-1 at ({i + 1},{j + 1}): {a} vs {b}")
    inv = mk_phi(f.graph, pf.v, pf.w, pf.edges, Q)
    ident = Endo.identity(f.graph)
    if not compose_functional(f, inv).agrees_with(ident) or not compose_functional(inv, f).agrees_with(ident):
        raise WitnessRejected("phi_Q is not a two-sided inverse on generators")
    return Automorphism(f, inv, Q)


def try_fixed_point_shortcut(f: Endo) -> Automorphism | None:
    """Certify with witness ``P^{-1}`` when ``phi_P`` fixes ``P`` or ``P^{-1}``."""
    pf = f.provenance
    if pf is None:
        raise EndoError("shortcut needs a matrix-built endomorphism")
    P = pf.matrix
    if apply_entrywise(f, P.P) == P.P or apply_entrywise(f, P.Pinv) == P.Pinv:
        return certify_automorphism(f, P.inverse())
    return None


def extract_matrix(g: Graph, f: Endo, v=None, edges=None) -> InvertiblePair:
    """Recover ``P`` with ``p_ij = e_i* f(e_j)`` and ``p'_ij = f(e_i*) e_j``."""
    if v is None:
        if g.num_vertices != 1:
            raise EndoError("vertex required")
        v = 0
    vi = g.vertex(v) if isinstance(v, str) else v
    es = tuple(g.edge(e) if isinstance(e, str) else e for e in (edges if edges is not None else g.out[vi]))
    if sorted(es) != sorted(g.out[vi]):
        raise EndoError("the listed edges must be exactly the edges leaving v")
    ranges = {g.rng[e] for e in es}
    if len(ranges) != 1:
        raise EndoError("the listed edges must share a range vertex")
    wi = ranges.pop()
    n = len(es)
    E = [Element.edge(g, e) for e in es]
    G = [Element.ghost(g, e) for e in es]
    P = AlgMatrix(g, wi, [[G[i] * f.apply(E[j]) for j in range(n)] for i in range(n)])
    Pinv = AlgMatrix(g, wi, [[f.apply(G[i]) * E[j] for j in range(n)] for i in range(n)])
    try:
        pair = mk_invertible(P, Pinv)
    except MatrixError as exc:
        raise EndoError(f"extracted matrices are not inverse: {exc}") from None
    back = mk_phi(g, vi, wi, es, pair)
    if not back.agrees_with(f):
        raise EndoError("the endomorphism is not of the form phi_P on these edges")
    return pair


# rose-graph (Cuntz) maps

def _rose(g: Graph) -> int:
    if g.num_vertices != 1 or any(g.rng[e] != 0 for e in range(g.num_edges)):
        raise EndoError("this operation is defined on rose graphs")
    return g.num_edges


def is_unit_pair(u: Element, uinv: Element) -> bool:
    one = Element.one(u.graph)
    return u * uinv == one and uinv * u == one


def matrix_iso(s: Element, n: int | None = None) -> AlgMatrix:
    """``s -> (e_i* s e_j)``, the isomorphism ``L -> M_n(L)``."""
    g = s.graph
    k = _rose(g)
    if n is not None and n != k:
        raise EndoError(f"graph has {k} petals, not {n}")
    E = [Element.edge(g, e) for e in range(k)]
    G = [Element.ghost(g, e) for e in range(k)]
    return AlgMatrix(g, 0, [[G[i] * s * E[j] for j in range(k)] for i in range(k)])


def matrix_iso_inv(M: AlgMatrix) -> Element:
    g = M.graph
    k = _rose(g)
    if M.n != k:
        raise EndoError("matrix size must equal the number of petals")
    E = [Element.edge(g, e) for e in range(k)]
    G = [Element.ghost(g, e) for e in range(k)]
    return _sum(g, (E[i] * M[i, j] * G[j] for i in range(k) for j in range(k)))


def mk_fu(u: Element, uinv: Element) -> Endo:
    """The Cuntz map ``f_u``: ``e_i -> u e_i``, ``e_i* -> e_i* u^{-1}``."""
    g = u.graph
    k = _rose(g)
    if not is_unit_pair(u, uinv):
        raise EndoError("u is not a unit with the given inverse")
    pair = mk_invertible(matrix_iso(u), matrix_iso(uinv))
    f = mk_phi(g, 0, 0, range(k), pair)
    for e in range(k):
        if f.images[("e", e)] != u * Element.edge(g, e) or f.images[("g", e)] != Element.ghost(g, e) * uinv:
            raise EndoError("f_u disagrees with phi_P for P = (e_i* u e_j)")
    f.unit = (u, uinv)
    return f


def unit_of_endo(f: Endo) -> Element:
    """``x = sum_i f(e_i) e_i*``; ``f = f_x`` on generators."""
    g = f.graph
    k = _rose(g)
    return _sum(g, (f.images[("e", e)] * Element.ghost(g, e) for e in range(k)))


def inner(u: Element, uinv: Element) -> Endo:
    """``tau_u(a) = u^{-1} a u``, realised as ``f_x`` with ``x = u^{-1} sum e_i u e_i*``."""
    g = u.graph
    k = _rose(g)
    if not is_unit_pair(u, uinv):
        raise EndoError("u is not a unit with the given inverse")
    x = uinv * _sum(g, (Element.edge(g, e) * u * Element.ghost(g, e) for e in range(k)))
    xinv = _sum(g, (Element.edge(g, e) * uinv * Element.ghost(g, e) for e in range(k))) * u
    f = mk_fu(x, xinv)
    for key, a in generator_images_identity(g).items():
        if f.images[key] != uinv * a * u:
            raise EndoError("inner automorphism disagrees with f_x")
    return f


def unit_inverse(u: Element, max_len: int = 4) -> Element | None:
    """Search for ``u^{-1}`` among combinations of normal monomials with |p|,|q| <= max_len.

    Solves ``u X = 1`` exactly, then checks ``X u = 1``. Returns None when no
    inverse is found within the bound.
    """
    from .algebra import basis_monomials
    from .linalg import Eliminator

    g = u.graph
    el = Eliminator()
    for b in basis_monomials(g, max_len):
        el.add((u * Element(g, {b: 1})).terms, b)
    combo = el.solve(Element.one(g).terms)
    if combo is None:
        return None
    x = Element(g, {k: c for k, c in combo.items() if c})
    return x if is_unit_pair(u, x) else None


def matrix_inverse(P: AlgMatrix, max_len: int = 4) -> AlgMatrix | None:
    """Inverse of ``P`` over a rose graph via ``M_n(L) = L`` and :func:`unit_inverse`."""
    rows = P.scalar_rows()
    if rows is not None:
        from .linalg import SingularMatrixError, inverse

        try:
            return AlgMatrix.from_scalars(P.graph, P.w, inverse(rows))
        except SingularMatrixError:
            return None
    s = matrix_iso_inv(P)
    sinv = unit_inverse(s, max_len)
    return None if sinv is None else matrix_iso(sinv)
