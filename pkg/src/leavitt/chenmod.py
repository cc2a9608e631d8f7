"""Infinite paths, Chen modules ``V_[p]`` and their twists by scalar matrices.

Infinite paths come in two kinds. Eventually periodic paths ``p c c c ...``
are stored exactly in a canonical form. Oracle paths ``p t_0 t_1 ...`` read
their tail from a pure index function; questions about them that need more
than ``bound`` edges of look-ahead come back as ``Unknown``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import Callable, Sequence

from .algebra import Element
from .field import scalar
from .graph import ClosedPathClass, Graph, GraphError, Path, primitive_root
from .linalg import SingularMatrixError
from .linalg import inverse as scalar_inverse
from .matrix import InvertiblePair, invertible_scalar
from .morphism import Endo, mk_phi

DEFAULT_BOUND = 64


class ModuleError(ValueError):
    pass


class OracleExhausted(ModuleError):
    pass


# oracles

@dataclass(frozen=True)
class Oracle:
    """A pure map ``index -> symbol`` with facts the caller vouches for.

    ``forbidden`` lists symbol words that never occur in the sequence, and
    ``uniformly_recurrent`` says every factor recurs with bounded gaps. Both
    feed the "no" verdicts of :func:`tail_equivalent`.
    """

    name: str
    fn: Callable[[int], int] = field(compare=False)
    alphabet: int = 2
    forbidden: tuple = ()
    uniformly_recurrent: bool = True


def _thue_morse(i: int) -> int:
    return bin(i).count("1") & 1


def _floor_phi(k: int) -> int:
    return (isqrt(5 * k * k) + k) // 2


def _fibonacci(i: int) -> int:
    # 0 = a, 1 = b in the fixed point of a -> ab, b -> a
    return 2 - (_floor_phi(i + 2) - _floor_phi(i + 1))


ORACLES: dict[str, Oracle] = {
    "thue-morse": Oracle("thue-morse", _thue_morse, 2, ((0, 0, 0), (1, 1, 1))),
    "fibonacci-word": Oracle("fibonacci-word", _fibonacci, 2, ((1, 1), (0, 0, 0))),
}


def register_oracle(oracle: Oracle) -> None:
    ORACLES[oracle.name] = oracle


# infinite paths

class InfinitePath:
    graph: Graph
    prefix: tuple

    def edge(self, i: int) -> int:
        raise NotImplementedError

    def first(self, k: int) -> tuple:
        return tuple(self.edge(i) for i in range(k))

    @property
    def source(self) -> int:
        return self.graph.src[self.edge(0)]

    def starts_with(self, q: Sequence[int]) -> bool:
        return all(self.edge(i) == e for i, e in enumerate(q))

    def shift(self, k: int) -> "InfinitePath":
        raise NotImplementedError

    def prepend(self, p: Sequence[int]) -> "InfinitePath":
        raise NotImplementedError

    def relabel(self, sigma: Sequence[int]) -> "InfinitePath":
        raise NotImplementedError

    def render(self, k: int = 12) -> str:
        return " ".join(self.graph.edge_name(e) for e in self.first(k)) + " ..."


@dataclass(frozen=True, eq=False)
class EventuallyPeriodic(InfinitePath):
    """``prefix cycle cycle ...`` kept canonical by :func:`canonicalize_path`."""

    graph: Graph
    prefix: tuple
    cycle: tuple

    def __eq__(self, other):
        return isinstance(other, EventuallyPeriodic) and (self.prefix, self.cycle) == (other.prefix, other.cycle) and self.graph == other.graph

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(("ep", self.prefix, self.cycle))
            object.__setattr__(self, "_hash", h)
        return h

    def edge(self, i: int) -> int:
        n = len(self.prefix)
        if i < n:
            return self.prefix[i]
        return self.cycle[(i - n) % len(self.cycle)]

    def shift(self, k: int) -> "EventuallyPeriodic":
        n = len(self.prefix)
        if k <= n:
            return _canon_ep(self.graph, self.prefix[k:], self.cycle)
        r = (k - n) % len(self.cycle)
        return _canon_ep(self.graph, (), self.cycle[r:] + self.cycle[:r])

    def prepend(self, p) -> "EventuallyPeriodic":
        return canonicalize_path(self.graph, tuple(p) + self.prefix, self.cycle)

    def relabel(self, sigma) -> "EventuallyPeriodic":
        return canonicalize_path(self.graph, _relabel(self.graph, self.prefix, sigma), _relabel(self.graph, self.cycle, sigma))

    def __str__(self):
        g = self.graph
        cyc = "(" + " ".join(g.edge_name(e) for e in self.cycle) + ")^inf"
        if not self.prefix:
            return cyc
        return " ".join(g.edge_name(e) for e in self.prefix) + " " + cyc

    __repr__ = __str__


@dataclass(frozen=True, eq=False)
class OraclePath(InfinitePath):
    """``prefix`` followed by ``letters[oracle(offset + i)]`` for ``i = 0, 1, ...``.

    ``letters`` maps oracle symbols to edge indices. ``irrational`` and
    ``eeri`` (every edge infinitely often) are caller-asserted flags.
    """

    graph: Graph
    prefix: tuple
    oracle: Oracle
    letters: tuple
    offset: int = 0
    irrational: bool = True
    eeri: bool = True
    bound: int = DEFAULT_BOUND

    def _tail(self, i: int) -> int:
        return self.letters[self.oracle.fn(self.offset + i)]

    def edge(self, i: int) -> int:
        n = len(self.prefix)
        return self.prefix[i] if i < n else self._tail(i - n)

    def _ident(self):
        return (self.prefix, self.oracle.name, self.letters, self.offset)

    def __eq__(self, other):
        return isinstance(other, OraclePath) and self._ident() == other._ident() and self.graph == other.graph

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(("or",) + self._ident())
            object.__setattr__(self, "_hash", h)
        return h

    def _replace(self, **kw) -> "OraclePath":
        d = dict(
            graph=self.graph, prefix=self.prefix, oracle=self.oracle, letters=self.letters,
            offset=self.offset, irrational=self.irrational, eeri=self.eeri, bound=self.bound,
        )
        d.update(kw)
        return _canon_oracle(OraclePath(**d))

    def shift(self, k: int) -> "OraclePath":
        n = len(self.prefix)
        if k <= n:
            return self._replace(prefix=self.prefix[k:])
        return self._replace(prefix=(), offset=self.offset + k - n)

    def prepend(self, p) -> "OraclePath":
        p = tuple(p)
        if p:
            _check_adjacent(self.graph, p + (self.edge(0),))
        return self._replace(prefix=p + self.prefix)

    def relabel(self, sigma) -> "OraclePath":
        return self._replace(
            prefix=_relabel(self.graph, self.prefix, sigma),
            letters=_relabel(self.graph, self.letters, sigma),
        )

    def __str__(self):
        g = self.graph
        head = " ".join(g.edge_name(e) for e in self.prefix)
        body = f"oracle:{self.oracle.name}[{','.join(g.edge_name(e) for e in self.letters)}]"
        if self.offset:
            body += f"+{self.offset}"
        return f"{head} {body}" if head else body

    __repr__ = __str__


def _check_adjacent(g: Graph, edges: tuple):
    for a, b in zip(edges, edges[1:]):
        if g.rng[a] != g.src[b]:
            raise ModuleError(f"edges {g.edge_name(a)} and {g.edge_name(b)} do not compose")


def _relabel(g: Graph, edges: tuple, sigma) -> tuple:
    n = g.num_edges
    if g.num_vertices != 1:
        raise ModuleError("the symmetric group acts on rose graphs")
    sig = _check_perm(sigma, n)
    return tuple(sig[e] - 1 for e in edges)


def _check_perm(sigma, n: int) -> tuple:
    sig = tuple(int(s) for s in sigma)
    if sorted(sig) != list(range(1, n + 1)):
        raise ModuleError(f"{sigma} is not a permutation of 1..{n}")
    return sig


def _canon_ep(g: Graph, prefix: tuple, cycle: tuple) -> EventuallyPeriodic:
    cycle = primitive_root(cycle)
    while prefix and prefix[-1] == cycle[-1]:
        cycle = (cycle[-1],) + cycle[:-1]
        prefix = prefix[:-1]
    return EventuallyPeriodic(g, prefix, cycle)


def _canon_oracle(p: OraclePath) -> OraclePath:
    prefix, offset = p.prefix, p.offset
    while prefix and offset > 0 and p.letters[p.oracle.fn(offset - 1)] == prefix[-1]:
        prefix = prefix[:-1]
        offset -= 1
    if (prefix, offset) == (p.prefix, p.offset):
        return p
    return OraclePath(p.graph, prefix, p.oracle, p.letters, offset, p.irrational, p.eeri, p.bound)


def canonicalize_path(g: Graph, prefix, cycle) -> EventuallyPeriodic:
    """Canonical ``prefix cycle^inf``.

    The cycle is replaced by its primitive root, then the prefix is absorbed
    from the right while its last edge equals the cycle's last edge (each
    step rotates the cycle right by one). The result is the unique shortest
    prefix with a primitive cycle describing the same path.
    """
    prefix = tuple(g.edge(e) if isinstance(e, str) else e for e in prefix)
    cycle = tuple(g.edge(e) if isinstance(e, str) else e for e in cycle)
    if not cycle:
        raise ModuleError("empty cycle")
    try:
        Path(g, g.src[cycle[0]], cycle)
        if prefix:
            Path(g, g.src[prefix[0]], prefix + cycle[:1])
    except GraphError:
        raise ModuleError("invalid junction: consecutive edges do not compose") from None
    if g.rng[cycle[-1]] != g.src[cycle[0]]:
        raise ModuleError("the repeated part must be a closed path")
    return _canon_ep(g, prefix, cycle)


def oracle_path(g: Graph, name: str, letters, prefix=(), offset: int = 0, bound: int = DEFAULT_BOUND,
                irrational: bool = True, eeri: bool = True) -> OraclePath:
    if name not in ORACLES:
        raise ModuleError(f"unknown oracle {name!r}; known: {', '.join(sorted(ORACLES))}")
    orc = ORACLES[name]
    lets = tuple(g.edge(e) if isinstance(e, str) else e for e in letters)
    if len(lets) != orc.alphabet:
        raise ModuleError(f"oracle {name} needs {orc.alphabet} edge letters")
    pre = tuple(g.edge(e) if isinstance(e, str) else e for e in prefix)
    p = OraclePath(g, pre, orc, lets, offset, irrational, eeri, bound)
    _check_adjacent(g, p.first(len(pre) + bound))
    return _canon_oracle(p)


def path_from_literal(lit, g: Graph, bound: int = DEFAULT_BOUND) -> InfinitePath:
    """Resolve a :class:`leavitt.parse.PathLiteral` over ``g``."""
    try:
        if lit.oracle is not None:
            letters = lit.letters or tuple(g.edge_name(e) for e in range(g.num_edges))
            return oracle_path(g, lit.oracle, letters, lit.prefix, bound=bound)
        return canonicalize_path(g, lit.prefix, lit.cycle)
    except GraphError as exc:
        raise ModuleError(str(exc)) from None


# tail equivalence

@dataclass(frozen=True)
class Yes:
    reason: str = ""

    def __str__(self):
        return "yes"


@dataclass(frozen=True)
class No:
    reason: str = ""

    def __str__(self):
        return "no"


@dataclass(frozen=True)
class Unknown:
    bound: int
    reason: str = ""

    def __str__(self):
        return f"unknown({self.bound})"


def _min_rotation(w: tuple) -> tuple:
    return min(w[i:] + w[:i] for i in range(len(w)))


def tail_class_key(p: EventuallyPeriodic) -> tuple:
    """Two eventually periodic paths are tail equivalent iff their keys agree."""
    return _min_rotation(p.cycle)


def _tail_factor_forbidden(p: OraclePath, q: InfinitePath, bound: int):
    """A factor of ``q``'s oracle tail that ``p``'s oracle never produces, if one is visible."""
    forb = [tuple(p.letters[s] for s in w) for w in p.oracle.forbidden]
    if not forb:
        return None
    start = len(q.prefix)
    window = tuple(q.edge(start + i) for i in range(bound))
    for w in forb:
        k = len(w)
        for i in range(len(window) - k + 1):
            if window[i : i + k] == w:
                return w
    return None


def tail_equivalent(p: InfinitePath, q: InfinitePath, bound: int | None = None):
    """``Yes``, ``No`` or ``Unknown(bound)``.

    Eventually periodic pairs are decided exactly. For oracle paths the
    verdicts lean on declared facts: the same oracle with the same letters
    is a shift (yes); an irrational-flagged path is never tail equivalent to a
    periodic one (no); a factor of one uniformly recurrent tail that the other
    oracle forbids rules equivalence out (no). Anything else is unknown.
    """
    if isinstance(p, EventuallyPeriodic) and isinstance(q, EventuallyPeriodic):
        if p.graph != q.graph:
            return No("different graphs")
        return Yes("cycles are rotations") if tail_class_key(p) == tail_class_key(q) else No("cycles are not rotations")
    B = bound if bound is not None else max(getattr(p, "bound", 0), getattr(q, "bound", 0)) or DEFAULT_BOUND
    if isinstance(p, EventuallyPeriodic):
        p, q = q, p
    if isinstance(q, EventuallyPeriodic):
        if p.irrational:
            return No("oracle path is declared irrational")
        return Unknown(B, "oracle path is not declared irrational")
    if p.oracle.name == q.oracle.name and p.letters == q.letters:
        return Yes("same oracle tail up to shift")
    for a, b in ((p, q), (q, p)):
        if b.oracle.uniformly_recurrent and _tail_factor_forbidden(a, b, B) is not None:
            return No(f"a recurring factor of {b} never occurs in {a.oracle.name}")
    return Unknown(B, "no decisive evidence within the comparison bound")


# module vectors and the action

class ModuleVector:
    """A finite combination of infinite paths in a (possibly twisted) Chen module."""

    __slots__ = ("graph", "terms", "twist")

    def __init__(self, graph: Graph, terms: dict | None = None, twist: InvertiblePair | None = None):
        self.graph = graph
        self.terms = {k: c for k, c in (terms or {}).items() if c}
        self.twist = twist

    @classmethod
    def of(cls, path: InfinitePath, coeff=1, twist: InvertiblePair | None = None) -> "ModuleVector":
        return cls(path.graph, {path: scalar(coeff)}, twist)

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k, 0) + c
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        return ModuleVector(self.graph, terms, self.twist)

    def scale(self, c) -> "ModuleVector":
        c = scalar(c)
        return ModuleVector(self.graph, {k: c * a for k, a in self.terms.items()}, self.twist)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if isinstance(other, ModuleVector):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for path, c in sorted(self.terms.items(), key=lambda kv: str(kv[0])):
            s = str(c)
            neg = s.startswith("-")
            s = s.lstrip("-")
            body = str(path) if s == "1" else f"{s}*[{path}]"
            sep = (" - " if neg else " + ") if parts else ("-" if neg else "")
            parts.append(sep + body)
        return "".join(parts)

    __repr__ = __str__


def _act_key(g: Graph, k, x: InfinitePath):
    p, q, v = k
    if not q:
        if x.source != v:
            return None
        y = x
    else:
        if not x.starts_with(q):
            return None
        y = x.shift(len(q))
    return y.prepend(p) if p else y


def act(a: Element, m: ModuleVector) -> ModuleVector:
    """The untwisted action: ``v``, ``e`` prepend when composable, ``e*`` strips a leading ``e``."""
    if a.graph != m.graph:
        raise ModuleError("graph mismatch")
    g = a.graph
    terms: dict = {}
    for k, c in a.terms.items():
        for x, d in m.terms.items():
            y = _act_key(g, k, x)
            if y is None:
                continue
            s = terms.get(y, 0) + c * d
            if s:
                terms[y] = s
            else:
                terms.pop(y, None)
    return ModuleVector(g, terms, m.twist)


def scalar_pair(g: Graph, P) -> InvertiblePair:
    """Coerce a scalar matrix (rows of numbers or an InvertiblePair) to a verified pair."""
    if isinstance(P, InvertiblePair):
        if not P.P.is_scalar():
            raise ModuleError("module twists use scalar matrices only")
        return P
    try:
        return invertible_scalar(g, 0, P)
    except SingularMatrixError:
        raise ModuleError("twisting matrix is singular") from None


def phi_scalar(g: Graph, P) -> Endo:
    pair = scalar_pair(g, P)
    return mk_phi(g, 0, 0, range(g.num_edges), pair)


def twisted_act(P, a: Element, m: ModuleVector) -> ModuleVector:
    """``a . beta = phi_{P^{-1}}(a) beta`` in ``V^P``.

    Each monomial acts one generator at a time through the images of
    ``phi_{P^{-1}}``, which avoids expanding ``phi_{P^{-1}}(a)`` in the algebra.
    """
    g = a.graph
    pair = scalar_pair(g, P)
    finv = mk_phi(g, 0, 0, range(g.num_edges), pair.inverse())
    base = ModuleVector(g, m.terms)
    ghost_part: dict = {(): base}

    def after_ghosts(q):
        # q* = q_k* ... q_1* acts q_1* first; share work across common prefixes of q
        hit = ghost_part.get(q)
        if hit is None:
            prev = after_ghosts(q[:-1])
            hit = act(finv.images[("g", q[-1])], prev) if prev else prev
            ghost_part[q] = hit
        return hit

    # group by ghost part: a = sum_q (sum_p c p) q*, and the real parts cancel
    # inside the algebra before they ever touch the module
    by_q: dict = {}
    for (p, q, v), c in a.terms.items():
        by_q.setdefault(q, {})[(p, (), v)] = c
    out = ModuleVector(g, {}, pair)
    for q in sorted(by_q, key=lambda t: (len(t), t)):
        y = after_ghosts(q)
        if not y:
            continue
        real = finv.apply(Element(g, by_q[q]))
        if real:
            out = out + act(real, y)
    return ModuleVector(g, out.terms, pair)


def epsilon(alpha: InfinitePath, m: int) -> Element:
    """``eps_m = tau_{<=m}(alpha) tau_{<=m}(alpha)*``; ``eps_0`` is the source vertex."""
    if m < 0:
        raise ModuleError("m must be >= 0")
    g = alpha.graph
    if m == 0:
        return Element.vertex(g, alpha.source)
    if isinstance(alpha, OraclePath) and m > len(alpha.prefix) + alpha.bound:
        raise OracleExhausted(f"eps_{m} needs more than the {alpha.bound}-edge look-ahead")
    p = alpha.first(m)
    return Element.from_key(g, p, p, g.rng[p[-1]])


def annihilator_check(P, alpha: InfinitePath, m_max: int, eps: Callable | None = None) -> bool:
    """``(phi_P(eps_m) - phi_P(eps_{m+1})) . alpha = 0`` in ``V^P`` for ``0 <= m <= m_max``.

    ``eps`` replaces :func:`epsilon` (negative controls).
    """
    g = alpha.graph
    f = phi_scalar(g, P)
    eps = eps or epsilon
    vec = ModuleVector.of(alpha)
    for m in range(m_max + 1):
        r = f.apply(eps(alpha, m)) - f.apply(eps(alpha, m + 1))
        if twisted_act(P, r, vec):
            return False
    return True


# symmetric group actions

def sn_act_path(sigma, p: InfinitePath) -> InfinitePath:
    """Relabel every edge ``e_i`` as ``e_sigma(i)`` (``sigma`` as the tuple ``sigma(1..n)``)."""
    return p.relabel(sigma)


def sn_act_matrix(sigma, A):
    """``sigma . A = [a_sigma(1) ... a_sigma(n)]``: column ``j`` becomes column ``sigma(j)`` of ``A``.

    With ``(st)(i) = s(t(i))`` this satisfies ``s.(t.A) = (ts).A``.
    """
    rows = [list(r) for r in (A.rows if hasattr(A, "rows") else A)]
    n = len(rows)
    sig = _check_perm(sigma, n)
    out = [[r[sig[j] - 1] for j in range(n)] for r in rows]
    if hasattr(A, "rows"):
        from .matrix import AlgMatrix

        return AlgMatrix(A.graph, A.w, out)
    return out


def perm_compose(s, t) -> tuple:
    """``(st)(i) = s(t(i))``."""
    return tuple(s[t[i] - 1] for i in range(len(t)))


def perm_inverse(s) -> tuple:
    out = [0] * len(s)
    for i, si in enumerate(s):
        out[si - 1] = i + 1
    return tuple(out)


@dataclass(frozen=True)
class PermDiagDecomp:
    sigma: tuple
    diag: tuple

    def matrix(self) -> list:
        n = len(self.sigma)
        D = [[self.diag[i] if i == j else scalar(0) for j in range(n)] for i in range(n)]
        return sn_act_matrix(self.sigma, D)


def monomial_decompose(P) -> PermDiagDecomp | None:
    """Write a scalar matrix as ``sigma . D`` when it has one nonzero per row and column."""
    rows = _scalar_rows(P)
    n = len(rows)
    sigma = []
    for j in range(n):
        nz = [i for i in range(n) if rows[i][j]]
        if len(nz) != 1:
            return None
        sigma.append(nz[0] + 1)
    if sorted(sigma) != list(range(1, n + 1)):
        return None
    diag = [scalar(0)] * n
    for j, s in enumerate(sigma):
        diag[s - 1] = rows[s - 1][j]
    dec = PermDiagDecomp(tuple(sigma), tuple(diag))
    if dec.matrix() != rows:
        raise ModuleError("internal error: decomposition does not reassemble")
    return dec


def _scalar_rows(P) -> list:
    if isinstance(P, InvertiblePair):
        P = P.P
    if hasattr(P, "scalar_rows"):
        rows = P.scalar_rows()
        if rows is None:
            raise ModuleError("expected a scalar matrix")
        return rows
    return [[scalar(x) for x in r] for r in P]


# isomorphism decisions

def _closed_word(c) -> tuple:
    if isinstance(c, ClosedPathClass):
        return c.path.edges, c.path.graph
    if isinstance(c, Path):
        return c.edges, c.graph
    raise ModuleError("expected a closed path")


def iso_test_rational(c, P, d, Q) -> bool:
    """``V^P_[c^inf]`` vs ``V^Q_[d^inf]``: is ``phi_Q(d) = phi_P(beta)`` for a rotation ``beta`` of ``c``?"""
    cw, g = _closed_word(c)
    dw, _ = _closed_word(d)
    fP, fQ = phi_scalar(g, P), phi_scalar(g, Q)
    target = fQ.apply(Element.from_key(g, dw, (), g.rng[dw[-1]]))
    for i in range(len(cw)):
        beta = cw[i:] + cw[:i]
        if fP.apply(Element.from_key(g, beta, (), g.rng[beta[-1]])) == target:
            return True
    return False


def iso_test_irrational(alpha: InfinitePath, P, beta: InfinitePath, Q, bound: int = DEFAULT_BOUND):
    """``V^P_[alpha]`` vs ``V^Q_[beta]`` for irrational paths using every edge infinitely often.

    Isomorphic iff ``Q^{-1} P = sigma . D`` is monomial and ``beta ~ sigma . alpha``.
    """
    for x in (alpha, beta):
        if isinstance(x, EventuallyPeriodic):
            raise ModuleError("iso_test_irrational expects irrational paths")
    Pr, Qr = _scalar_rows(P), _scalar_rows(Q)
    try:
        Qi = scalar_inverse(Qr)
    except SingularMatrixError:
        raise ModuleError("Q is singular") from None
    from .linalg import matmul

    dec = monomial_decompose(matmul(Qi, Pr))
    if dec is None:
        return No("Q^-1 P is not monomial")
    return tail_equivalent(beta, sn_act_path(dec.sigma, alpha), bound)


def module_basis(g: Graph, base: InfinitePath, max_prefix: int) -> list:
    """Paths ``p tau_{>k}(base)`` for ``|p| <= max_prefix`` and ``k <= max_prefix``, deduplicated."""
    seen = []
    seen_set = set()
    for k in range(max_prefix + 1):
        tail = base.shift(k)
        for L in range(max_prefix + 1):
            for p in g.paths_of_length(L):
                if p and g.rng[p[-1]] != tail.source:
                    continue
                x = tail.prepend(p) if p else tail
                if x not in seen_set:
                    seen_set.add(x)
                    seen.append(x)
    return seen
