"""Square matrices over a corner ``w L w`` and verified invertible pairs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .algebra import Element, in_corner
from .field import scalar
from .graph import Graph
from .linalg import inverse as _scalar_inverse


class MatrixError(ValueError):
    pass


class AlgMatrix:
    """An ``n x n`` matrix whose entries lie in the corner ``w L w``."""

    __slots__ = ("graph", "w", "rows")

    def __init__(self, graph: Graph, w: int | str, rows: Sequence[Sequence[Element]]):
        w = graph.vertex(w) if isinstance(w, str) else w
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise MatrixError("matrix must be square and nonempty")
        for i, r in enumerate(rows):
            for j, a in enumerate(r):
                if not isinstance(a, Element) or a.graph != graph:
                    raise MatrixError(f"entry ({i + 1},{j + 1}) is not an element of this algebra")
                if not in_corner(a, w, w):
                    raise MatrixError(f"entry ({i + 1},{j + 1}) = {a} lies outside the corner at {graph.vertex_name(w)}")
        self.graph = graph
        self.w = w
        self.rows = rows

    @classmethod
    def identity(cls, g: Graph, w, n: int) -> "AlgMatrix":
        return cls.from_scalars(g, w, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def from_scalars(cls, g: Graph, w, rows) -> "AlgMatrix":
        wi = g.vertex(w) if isinstance(w, str) else w
        unit = Element.vertex(g, wi)
        return cls(g, wi, [[unit.scale(c) for c in r] for r in rows])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij) -> Element:
        i, j = ij
        return self.rows[i][j]

    def entries(self):
        for i, r in enumerate(self.rows):
            for j, a in enumerate(r):
                yield (i, j), a

    def _compat(self, other: "AlgMatrix"):
        if not isinstance(other, AlgMatrix):
            raise MatrixError("not a matrix")
        if other.n != self.n:
            raise MatrixError(f"size mismatch: {self.n} vs {other.n}")
        if other.w != self.w or other.graph != self.graph:
            raise MatrixError("corner mismatch")

    def __mul__(self, other: "AlgMatrix") -> "AlgMatrix":
        return mat_mul(self, other)

    def __add__(self, other: "AlgMatrix") -> "AlgMatrix":
        self._compat(other)
        return AlgMatrix(self.graph, self.w, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return AlgMatrix(self.graph, self.w, [[-a for a in r] for r in self.rows])

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, AlgMatrix):
            return NotImplemented
        return self.graph == other.graph and self.w == other.w and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def map(self, f: Callable[[Element], Element]) -> "AlgMatrix":
        return AlgMatrix(self.graph, self.w, [[f(a) for a in r] for r in self.rows])

    def is_degree_zero(self) -> bool:
        return all(a.degrees <= {0} for _, a in self.entries())

    def scalar_rows(self):
        """Scalar entries ``k`` when every entry is ``k * w``; otherwise None."""
        key = ((), (), self.w)
        out = []
        for r in self.rows:
            row = []
            for a in r:
                if not a.terms:
                    row.append(scalar(0))
                elif set(a.terms) == {key}:
                    row.append(a.terms[key])
                else:
                    return None
            out.append(row)
        return out

    def is_scalar(self) -> bool:
        return self.scalar_rows() is not None

    def __str__(self):
        return "[" + "; ".join(", ".join(str(a) for a in r) for r in self.rows) + "]"

    def __repr__(self):
        return f"AlgMatrix({self})"


def mat_mul(A: AlgMatrix, B: AlgMatrix) -> AlgMatrix:
    A._compat(B)
    n = A.n
    zero = Element.zero(A.graph)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = zero
            for k in range(n):
                a, b = A.rows[i][k], B.rows[k][j]
                if a and b:
                    acc = acc + a * b
            row.append(acc)
        rows.append(row)
    return AlgMatrix(A.graph, A.w, rows)


@dataclass(frozen=True)
class InvertiblePair:
    """A matrix bundled with an exactly verified two-sided inverse."""

    P: AlgMatrix
    Pinv: AlgMatrix
    degree_zero: bool

    @property
    def n(self) -> int:
        return self.P.n

    @property
    def graph(self) -> Graph:
        return self.P.graph

    @property
    def w(self) -> int:
        return self.P.w

    def inverse(self) -> "InvertiblePair":
        return InvertiblePair(self.Pinv, self.P, self.degree_zero)

    def __str__(self):
        return str(self.P)


def _first_mismatch(M: AlgMatrix, I: AlgMatrix):
    for (i, j), a in M.entries():
        if a != I[i, j]:
            return i, j, a
    return None


def mk_invertible(P: AlgMatrix, Pinv: AlgMatrix) -> InvertiblePair:
    """Verify ``P Pinv = Pinv P = w I`` and bundle the pair.

    Raises MatrixError naming the first offending entry.
    """
    P._compat(Pinv)
    I = AlgMatrix.identity(P.graph, P.w, P.n)
    for label, prod in (("P*Pinv", P * Pinv), ("Pinv*P", Pinv * P)):
        bad = _first_mismatch(prod, I)
        if bad is not None:
            i, j, a = bad
            raise MatrixError(f"{label} differs from the identity at ({i + 1},{j + 1}): got {a}, expected {I[i, j]}")
    return InvertiblePair(P, Pinv, P.is_degree_zero() and Pinv.is_degree_zero())


def invertible_scalar(g: Graph, w, rows) -> InvertiblePair:
    """Fast path for matrices in GL_n(K): invert over the field, lift, verify."""
    inv = _scalar_inverse(rows)
    return mk_invertible(AlgMatrix.from_scalars(g, w, rows), AlgMatrix.from_scalars(g, w, inv))


def invertible(P: AlgMatrix, Pinv: AlgMatrix | None = None) -> InvertiblePair:
    """Like :func:`mk_invertible`, computing ``Pinv`` when ``P`` is scalar."""
    if Pinv is None:
        rows = P.scalar_rows()
        if rows is None:
            raise MatrixError("an inverse must be supplied for non-scalar matrices")
        return invertible_scalar(P.graph, P.w, rows)
    return mk_invertible(P, Pinv)


def U(p: Element, w=None) -> InvertiblePair:
    """The unipotent pair ``U_p = [[w, p], [0, w]]`` with inverse ``U_{-p}``."""
    g = p.graph
    if w is None:
        if g.num_vertices != 1:
            raise MatrixError("corner vertex required")
        w = 0
    wi = g.vertex(w) if isinstance(w, str) else w
    one = Element.vertex(g, wi)
    zero = Element.zero(g)
    return mk_invertible(AlgMatrix(g, wi, [[one, p], [zero, one]]), AlgMatrix(g, wi, [[one, -p], [zero, one]]))


def apply_entrywise(f, A: AlgMatrix) -> AlgMatrix:
    """``f(A) = (f(a_ij))`` for an endomorphism (or any element map) ``f``."""
    fn = f.apply if hasattr(f, "apply") else f
    return A.map(fn)


def _matrix_of(phi, P):
    if P is not None:
        return P
    pair = getattr(phi, "matrix", None)
    if pair is None:
        raise MatrixError("endomorphism has no provenance matrix")
    return pair


def iterate_Pm(phi, m: int, P: InvertiblePair | AlgMatrix | None = None) -> AlgMatrix:
    """``P_m = P phi(P) ... phi^{m-1}(P)`` by left-to-right accumulation."""
    if m < 1:
        raise MatrixError("m must be >= 1")
    P = _matrix_of(phi, P)
    M = P.P if isinstance(P, InvertiblePair) else P
    acc = cur = M
    for _ in range(m - 1):
        cur = apply_entrywise(phi, cur)
        acc = acc * cur
    return acc


def iterate_Pm_inverse(phi, m: int, P: InvertiblePair | None = None) -> AlgMatrix:
    """``P_m^{-1} = phi^{m-1}(P^{-1}) ... phi(P^{-1}) P^{-1}``."""
    if m < 1:
        raise MatrixError("m must be >= 1")
    P = _matrix_of(phi, P)
    acc = cur = P.Pinv
    for _ in range(m - 1):
        cur = apply_entrywise(phi, cur)
        acc = cur * acc
    return acc


def iterate_pair(phi, m: int, P: InvertiblePair | None = None) -> InvertiblePair:
    return mk_invertible(iterate_Pm(phi, m, P), iterate_Pm_inverse(phi, m, P))


def star_product(P: InvertiblePair, Q: InvertiblePair, phiP) -> InvertiblePair:
    """``P * Q = P phi_P(Q)`` with inverse ``phi_P(Q^{-1}) P^{-1}``."""
    return mk_invertible(P.P * apply_entrywise(phiP, Q.P), apply_entrywise(phiP, Q.Pinv) * P.Pinv)
