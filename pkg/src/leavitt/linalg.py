"""Exact linear algebra over the active field.

Vectors are sparse dicts ``{coordinate: scalar}``; coordinates can be any
hashable (monomial keys in practice).
"""

from __future__ import annotations

from .field import reciprocal, scalar


class SingularMatrixError(ArithmeticError):
    pass


class Eliminator:
    """Incremental reduced row echelon form that remembers row provenance.

    Each stored row carries the combination of input labels producing it, so
    a successful :meth:`solve` yields an explicit preimage.
    """

    def __init__(self):
        self.rows: dict = {}  # pivot -> (vector, combination)

    def __len__(self):
        return len(self.rows)

    def _reduce(self, vec: dict, combo: dict):
        vec = dict(vec)
        combo = dict(combo)
        for piv in [k for k in vec if k in self.rows]:
            c = vec.get(piv)
            if not c:
                continue
            rvec, rcombo = self.rows[piv]
            _axpy(vec, -c, rvec)
            _axpy(combo, -c, rcombo)
        return vec, combo

    def add(self, vec: dict, label) -> bool:
        """Insert a vector; returns False if it was already in the span."""
        vec, combo = self._reduce(vec, {label: scalar(1)})
        if not vec:
            return False
        piv = next(iter(vec))
        inv = reciprocal(vec[piv])
        vec = {k: c * inv for k, c in vec.items()}
        combo = {k: c * inv for k, c in combo.items()}
        for other, (ovec, ocombo) in self.rows.items():
            c = ovec.get(piv)
            if c:
                _axpy(ovec, -c, vec)
                _axpy(ocombo, -c, combo)
        self.rows[piv] = (vec, combo)
        return True

    def solve(self, target: dict):
        """Labels-to-coefficients combination hitting ``target``, or None."""
        rest, combo = self._reduce(target, {})
        if rest:
            return None
        return {k: -c for k, c in combo.items() if c}


def _axpy(y: dict, a, x: dict) -> None:
    for k, c in x.items():
        s = y.get(k)
        s = a * c if s is None else s + a * c
        if s:
            y[k] = s
        else:
            y.pop(k, None)


def rank(vectors) -> int:
    el = Eliminator()
    for i, v in enumerate(vectors):
        el.add(v, i)
    return len(el)


def inverse(rows) -> list:
    """Gauss-Jordan inverse of a square matrix of scalars."""
    n = len(rows)
    a = [[scalar(x) for x in r] + [scalar(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    if any(len(r) != 2 * n for r in a):
        raise ValueError("matrix is not square")
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = reciprocal(a[col][col])
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [r[n:] for r in a]


def matmul(a, b) -> list:
    return [[sum((x * y for x, y in zip(row, col)), scalar(0)) for col in zip(*b)] for row in a]
