"""Seeded random generators for elements, matrices and paths (tests and checks)."""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import Element, accumulate, reduce_key
from .field import characteristic, scalar
from .graph import Graph, rose
from .linalg import SingularMatrixError, inverse
from .matrix import InvertiblePair, U, invertible_scalar


def random_coeff(rng: random.Random, fractions: bool = True):
    while True:
        num = rng.randint(-4, 4)
        den = rng.choice((1, 1, 2, 3)) if fractions and characteristic() == 0 else 1
        if num:
            return scalar(Fraction(num, den))


def _path_to(g: Graph, v: int, k: int, rng: random.Random):
    incoming = [[e for e in range(g.num_edges) if g.rng[e] == u] for u in range(g.num_vertices)]
    path, at = [], v
    for _ in range(k):
        if not incoming[at]:
            return None
        e = rng.choice(incoming[at])
        path.append(e)
        at = g.src[e]
    return tuple(reversed(path))


def random_key(g: Graph, rng: random.Random, max_len: int = 3, degree: int | None = None):
    """A random pair ``(p, q, r(p))`` before normalization."""
    for _ in range(1000):
        v = rng.randrange(g.num_vertices)
        if degree is None:
            lp, lq = rng.randint(0, max_len), rng.randint(0, max_len)
        else:
            lo = max(0, degree)
            hi = min(max_len, max_len + degree)
            if lo > hi:
                raise ValueError(f"degree {degree} impossible with length bound {max_len}")
            lp = rng.randint(lo, hi)
            lq = lp - degree
        p = _path_to(g, v, lp, rng)
        q = _path_to(g, v, lq, rng)
        if p is not None and q is not None:
            return (p, q, v)
    raise ValueError("could not sample a monomial")


def random_element(g: Graph, rng: random.Random, terms: int = 4, max_len: int = 3,
                   degree: int | None = None, fractions: bool = True) -> Element:
    out: dict = {}
    for _ in range(rng.randint(1, terms)):
        p, q, v = random_key(g, rng, max_len, degree)
        c = random_coeff(rng, fractions)
        for sign, k in reduce_key(g, p, q, v):
            accumulate(out, k, c if sign == 1 else -c)
    return Element(g, out)


def random_homogeneous(g: Graph, rng: random.Random, degree: int, terms: int = 3, max_len: int = 3) -> Element:
    return random_element(g, rng, terms, max_len, degree)


def random_scalar_matrix(rng: random.Random, n: int = 2, fractions: bool = True) -> list:
    while True:
        rows = [[scalar(Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2)) if fractions and characteristic() == 0 else 1)) for _ in range(n)] for _ in range(n)]
        try:
            inverse(rows)
            return rows
        except SingularMatrixError:
            continue


def random_gl(g: Graph, rng: random.Random, n: int | None = None, fractions: bool = True) -> InvertiblePair:
    n = n or g.num_edges
    return invertible_scalar(g, 0, random_scalar_matrix(rng, n, fractions))


def random_permutation_matrix(g: Graph, rng: random.Random, n: int | None = None) -> InvertiblePair:
    n = n or g.num_edges
    perm = list(range(n))
    rng.shuffle(perm)
    return invertible_scalar(g, 0, [[int(perm[j] == i) for j in range(n)] for i in range(n)])


def random_A_element(rng: random.Random, max_len: int = 2, terms: int = 2) -> Element:
    """Random element of the subalgebra spanned by ``e1^i (e2*)^j`` (rose(2), ``i + j <= max_len``)."""
    g = rose(2)
    out: dict = {}
    for _ in range(rng.randint(1, terms)):
        i = rng.randint(0, max_len)
        j = rng.randint(0, max_len - i)
        if i == 0 and j == 0:
            continue
        accumulate(out, ((0,) * i, (1,) * j, 0), random_coeff(rng, fractions=False))
    if not out:
        accumulate(out, ((0,), (1,), 0), scalar(1))
    return Element(g, out)


def random_U(rng: random.Random, max_len: int = 2) -> InvertiblePair:
    return U(random_A_element(rng, max_len))


def random_unitriangular(rng: random.Random, n: int = 2) -> list:
    rows = [[scalar(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = scalar(1)
        for j in range(i + 1, n):
            rows[i][j] = scalar(rng.randint(-2, 2))
    return rows
