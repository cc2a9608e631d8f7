"""Elements of the Leavitt path algebra L_K(E) in canonical normal form.

A monomial ``p q*`` is stored as the key ``(p, q, vertex)`` where ``p`` and
``q`` are tuples of edge indices and ``vertex`` is their common range (needed
when both are empty). A key is in normal form when ``p`` and ``q`` do not both
end in the special edge ``f`` of a regular vertex: the pair ``f f*`` is
rewritten to ``s(f) - sum(e e*)`` over the other edges leaving ``s(f)``.
"""

from __future__ import annotations

from typing import Iterable

from .field import scalar
from .graph import Graph, GraphError, Path

Key = tuple  # (p: tuple[int], q: tuple[int], vertex: int)

_CACHE_LIMIT = 400_000


class AlgebraError(ValueError):
    pass


def key_degree(k: Key) -> int:
    return len(k[0]) - len(k[1])


def key_order(k: Key):
    p, q, v = k
    return (len(p) - len(q), len(p), p, q, v)


def key_source(g: Graph, k: Key) -> int:
    return g.src[k[0][0]] if k[0] else k[2]


def key_ghost_source(g: Graph, k: Key) -> int:
    return g.src[k[1][0]] if k[1] else k[2]


def _caches(g: Graph):
    c = g.__dict__.get("_lpa_caches")
    if c is None:
        c = g.__dict__["_lpa_caches"] = ({}, {})
    return c


def reduce_key(g: Graph, p: tuple, q: tuple, v: int, special=None) -> tuple:
    """Rewrite ``p q*`` into normal form; returns ``((sign, key), ...)``.

    Only the junction can be a redex. Each step peels ``f f*`` off the end,
    emits ``-p'e (q'e)*`` for the other edges ``e`` at ``s(f)`` and continues
    with ``p' q'*``.
    """
    if special is None:
        special = g.special
    out = []
    while p and q and p[-1] == q[-1] and p[-1] == special[g.src[p[-1]]]:
        f = p[-1]
        u = g.src[f]
        p, q = p[:-1], q[:-1]
        for e in g.out[u]:
            if e != f:
                out.append((-1, (p + (e,), q + (e,), g.rng[e])))
        v = u
    out.append((1, (p, q, v)))
    return tuple(out)


def _reduce_cached(g: Graph, p, q, v):
    cache = _caches(g)[0]
    k = (p, q, v)
    r = cache.get(k)
    if r is None:
        if len(cache) > _CACHE_LIMIT:
            cache.clear()
        r = cache[k] = reduce_key(g, p, q, v)
    return r


def mul_keys(g: Graph, k1: Key, k2: Key) -> tuple:
    """Product of two normal monomials as ``((sign, key), ...)``."""
    cache = _caches(g)[1]
    hit = cache.get((k1, k2))
    if hit is not None:
        return hit
    p1, q1, v1 = k1
    p2, q2, v2 = k2
    sq = g.src[q1[0]] if q1 else v1
    sr = g.src[p2[0]] if p2 else v2
    if sq != sr:
        res = ()
    else:
        lq, lr = len(q1), len(p2)
        if lq <= lr:
            if p2[:lq] != q1:
                res = ()
            else:
                res = _reduce_cached(g, p1 + p2[lq:], q2, v2)
        else:
            if q1[:lr] != p2:
                res = ()
            else:
                res = _reduce_cached(g, p1, q2 + q1[lr:], v1)
    if len(cache) > _CACHE_LIMIT:
        cache.clear()
    cache[(k1, k2)] = res
    return res


class Element:
    """A finite K-linear combination of normal monomials.

    Treat instances as immutable. Equality is equality of canonical term maps,
    which is the algebra's equality test.
    """

    __slots__ = ("graph", "terms")

    def __init__(self, graph: Graph, terms: dict | None = None):
        self.graph = graph
        self.terms = terms if terms is not None else {}

    # constructors
    @classmethod
    def zero(cls, g: Graph) -> "Element":
        return cls(g, {})

    @classmethod
    def one(cls, g: Graph) -> "Element":
        return cls(g, {((), (), v): scalar(1) for v in range(g.num_vertices)})

    @classmethod
    def vertex(cls, g: Graph, v: str | int) -> "Element":
        i = g.vertex(v) if isinstance(v, str) else v
        return cls(g, {((), (), i): scalar(1)})

    @classmethod
    def edge(cls, g: Graph, e: str | int) -> "Element":
        i = g.edge(e) if isinstance(e, str) else e
        return cls.from_key(g, (i,), (), g.rng[i])

    @classmethod
    def ghost(cls, g: Graph, e: str | int) -> "Element":
        i = g.edge(e) if isinstance(e, str) else e
        return cls.from_key(g, (), (i,), g.rng[i])

    @classmethod
    def from_key(cls, g: Graph, p: tuple, q: tuple, v: int, coeff=1) -> "Element":
        c = scalar(coeff)
        terms: dict = {}
        if c:
            for sign, k in reduce_key(g, tuple(p), tuple(q), v):
                accumulate(terms, k, c if sign == 1 else -c)
        return cls(g, terms)

    @classmethod
    def path(cls, g: Graph, *names: str) -> "Element":
        edges = tuple(g.edge(n) for n in names)
        Path(g, g.src[edges[0]], edges)
        return cls.from_key(g, edges, (), g.rng[edges[-1]])

    def scale(self, c) -> "Element":
        c = scalar(c)
        if not c:
            return Element(self.graph, {})
        return Element(self.graph, {k: c * a for k, a in self.terms.items()})

    # arithmetic
    def _check(self, other: "Element"):
        if other.graph is not self.graph and other.graph != self.graph:
            raise AlgebraError("elements live over different graphs")

    def __add__(self, other):
        if isinstance(other, Element):
            self._check(other)
            terms = dict(self.terms)
            for k, c in other.terms.items():
                accumulate(terms, k, c)
            return Element(self.graph, terms)
        if _is_scalar(other):
            return self + Element.one(self.graph).scale(other)
        return NotImplemented

    def __radd__(self, other):
        if _is_scalar(other):
            return self + other
        return NotImplemented

    def __neg__(self):
        return Element(self.graph, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, Element):
            return self + (-other)
        if _is_scalar(other):
            return self + (-scalar(other))
        return NotImplemented

    def __rsub__(self, other):
        if _is_scalar(other):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self, other)
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise AlgebraError("only non-negative integer powers are defined")
        result = Element.one(self.graph)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.graph == other.graph and self.terms == other.terms
        if _is_scalar(other) and not scalar(other):
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def star(self) -> "Element":
        return star(self)

    def items(self):
        """Terms in the canonical monomial order."""
        return sorted(self.terms.items(), key=lambda kc: key_order(kc[0]))

    def keys(self):
        return [k for k, _ in self.items()]

    def coefficient(self, k: Key):
        return self.terms.get(k, scalar(0))

    @property
    def degrees(self) -> set:
        return {key_degree(k) for k in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    @property
    def degree(self) -> int | None:
        """Degree of a nonzero homogeneous element; None for 0 or mixed."""
        d = self.degrees
        return next(iter(d)) if len(d) == 1 else None

    def graded_parts(self) -> dict:
        return graded_parts(self)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Element({render(self)!r})"


def _is_scalar(x) -> bool:
    from numbers import Rational

    from .field import GF

    return isinstance(x, (Rational, GF)) and not isinstance(x, bool)


def accumulate(terms: dict, k, c):
    s = terms.get(k)
    s = c if s is None else s + c
    if s:
        terms[k] = s
    else:
        terms.pop(k, None)


def _prefix_index(b: Element):
    """Index ``b``'s terms by exact real part ``p`` and by every prefix of ``p``."""
    exact: dict = {}
    pref: dict = {}
    for k, c in b.terms.items():
        p = k[0]
        exact.setdefault(p, []).append((k, c))
        for j in range(len(p) + 1):
            pref.setdefault(p[:j], []).append((k, c))
    return exact, pref


def mul(a: Element, b: Element) -> Element:
    a._check(b)
    g = a.graph
    terms: dict = {}
    if not a.terms or not b.terms:
        return Element(g, terms)
    exact, pref = _prefix_index(b)
    cache = _caches(g)[1]
    for k1, c1 in a.terms.items():
        q1 = k1[1]
        # only p2 that is a prefix of q1, or has q1 as a prefix, can pair with q1
        cands = []
        for j in range(len(q1)):
            hit = exact.get(q1[:j])
            if hit:
                cands.extend(hit)
        hit = pref.get(q1)
        if hit:
            cands.extend(hit)
        for k2, c2 in cands:
            prod = cache.get((k1, k2))
            if prod is None:
                prod = mul_keys(g, k1, k2)
            if not prod:
                continue
            c = c1 * c2
            for sign, k in prod:
                s = terms.get(k)
                s = (c if sign == 1 else -c) if s is None else (s + c if sign == 1 else s - c)
                if s:
                    terms[k] = s
                else:
                    del terms[k]
    return Element(g, terms)


def star(a: Element) -> Element:
    g = a.graph
    terms: dict = {}
    for (p, q, v), c in a.terms.items():
        # (pq*)* = qp*; swapping keeps normal form since the redex test is symmetric
        accumulate(terms, (q, p, v), c)
    return Element(g, terms)


def normalize(g: Graph, raw: Iterable) -> Element:
    """Build an element from ``(coeff, p, q)`` triples, ``p``/``q`` being Paths.

    ``p`` and ``q`` may also be edge-name sequences when nonempty.
    """
    terms: dict = {}
    for coeff, p, q in raw:
        p, q = _as_path(g, p), _as_path(g, q)
        if p is None and q is None:
            raise AlgebraError("an empty pair needs an explicit vertex path")
        rp = p.range if p is not None else None
        rq = q.range if q is not None else None
        if p is None:
            p = Path(g, rq, ())
            rp = rq
        if q is None:
            q = Path(g, rp, ())
            rq = rp
        if rp != rq:
            raise AlgebraError(f"mismatched ranges: r({p}) != r({q})")
        c = scalar(coeff)
        if not c:
            continue
        for sign, k in reduce_key(g, p.edges, q.edges, rp):
            accumulate(terms, k, c if sign == 1 else -c)
    return Element(g, terms)


def _as_path(g: Graph, x):
    if x is None or isinstance(x, Path):
        return x
    names = list(x)
    if not names:
        return None
    return Path.of(g, *names)


def graded_parts(a: Element) -> dict:
    parts: dict = {}
    for k, c in a.terms.items():
        parts.setdefault(key_degree(k), {})[k] = c
    return {d: Element(a.graph, t) for d, t in sorted(parts.items())}


def in_corner(a: Element, w1: str | int, w2: str | int) -> bool:
    g = a.graph
    i = g.vertex(w1) if isinstance(w1, str) else w1
    j = g.vertex(w2) if isinstance(w2, str) else w2
    return all(key_source(g, k) == i and key_ghost_source(g, k) == j for k in a.terms)


def in_A_subalgebra(a: Element, n: int | None = None) -> bool:
    """Membership in the subalgebra generated by v, e1, e3..en, e2*..en*.

    The test re-expresses ``a`` in the normal form whose special edge is
    ``e2``; in that basis the subalgebra is spanned by the monomials ``pq*``
    with ``p`` avoiding ``e2`` and ``q`` avoiding ``e1``.
    """
    g = a.graph
    petals = g.rose_petals
    if petals is None or petals < 2 or (n is not None and n != petals):
        raise AlgebraError("the A(e1, e2) subalgebra is defined on rose(n), n >= 2")
    alt = (1,)  # special edge e2 at the single vertex
    terms: dict = {}
    for (p, q, v), c in a.terms.items():
        for sign, k in reduce_key(g, p, q, v, special=alt):
            accumulate(terms, k, c if sign == 1 else -c)
    return all(1 not in p and 0 not in q for p, q, _ in terms)


def basis_monomials(g: Graph, max_len: int, degree: int | None = None) -> list:
    """Normal monomials ``pq*`` with ``|p|, |q| <= max_len`` in canonical order."""
    by_range: dict = {}
    for k in range(max_len + 1):
        for path in g.paths_of_length(k):
            r = g.rng[path[-1]] if path else None
            if path:
                by_range.setdefault(r, []).append(path)
    keys = []
    for v in range(g.num_vertices):
        keys.append(((), (), v))
    for r, paths in by_range.items():
        for p in paths:
            keys.append((p, (), r))
            keys.append(((), p, r))
        for p in paths:
            for q in paths:
                if p[-1] == q[-1] and p[-1] == g.special[g.src[p[-1]]]:
                    continue
                keys.append((p, q, r))
    if degree is not None:
        keys = [k for k in keys if key_degree(k) == degree]
    return sorted(set(keys), key=key_order)


# rendering

def _render_word(g: Graph, letters: list) -> list:
    """Compress runs of equal letters into ``x^k`` factors."""
    out = []
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        k = j - i
        out.append(letters[i] if k == 1 else f"{letters[i]}^{k}")
        i = j
    return out


def render_key(g: Graph, k: Key) -> str:
    p, q, v = k
    if not p and not q:
        return g.vertex_name(v)
    letters = [g.edge_name(e) for e in p] + [g.edge_name(e) + "'" for e in reversed(q)]
    return "*".join(_render_word(g, letters))


def render(a: Element) -> str:
    if not a.terms:
        return "0"
    g = a.graph
    chunks = []
    for k, c in a.items():
        s = str(c)
        neg = s.startswith("-")
        if neg:
            s = s[1:]
        body = render_key(g, k)
        term = body if s == "1" else f"{s}*{body}"
        if not chunks:
            chunks.append(("-" if neg else "") + term)
        else:
            chunks.append((" - " if neg else " + ") + term)
    return "".join(chunks)


def check_ck(g: Graph, images: dict, mul_fn=None) -> list:
    """Check the Cuntz-Krieger relations for candidate generator images.

    ``images`` maps ``('v', i)``, ``('e', i)``, ``('g', i)`` (ghost) to
    elements. ``mul_fn`` defaults to the algebra product; pass a twisted
    product to check relations in a twist. Returns failure descriptions.
    """
    m = mul_fn or mul
    fails = []
    V = [images[("v", i)] for i in range(g.num_vertices)]
    E = [images[("e", i)] for i in range(g.num_edges)]
    G = [images[("g", i)] for i in range(g.num_edges)]
    zero = Element.zero(g)
    for i in range(g.num_vertices):
        for j in range(g.num_vertices):
            want = V[i] if i == j else zero
            if m(V[i], V[j]) != want:
                fails.append(f"vertex relation ({g.vertex_name(i)}, {g.vertex_name(j)})")
    for e in range(g.num_edges):
        name = g.edge_name(e)
        s, r = g.src[e], g.rng[e]
        if m(V[s], E[e]) != E[e] or m(E[e], V[r]) != E[e]:
            fails.append(f"edge/vertex relation for {name}")
        if m(G[e], V[s]) != G[e] or m(V[r], G[e]) != G[e]:
            fails.append(f"ghost/vertex relation for {name}")
        for f in range(g.num_edges):
            want = V[r] if e == f else zero
            if m(G[e], E[f]) != want:
                fails.append(f"{name}'*{g.edge_name(f)} relation")
    for v in g.regular_vertices():
        total = zero
        for e in g.out[v]:
            total = total + m(E[e], G[e])
        if total != V[v]:
            fails.append(f"vertex {g.vertex_name(v)} sum relation")
    return fails


def generator_images_identity(g: Graph) -> dict:
    imgs = {("v", i): Element.vertex(g, i) for i in range(g.num_vertices)}
    for e in range(g.num_edges):
        imgs[("e", e)] = Element.edge(g, e)
        imgs[("g", e)] = Element.ghost(g, e)
    return imgs


__all__ = [
    "AlgebraError",
    "Element",
    "GraphError",
    "basis_monomials",
    "check_ck",
    "graded_parts",
    "in_A_subalgebra",
    "in_corner",
    "key_degree",
    "key_order",
    "mul",
    "normalize",
    "reduce_key",
    "render",
    "render_key",
    "star",
]
