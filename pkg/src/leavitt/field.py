"""Exact scalar fields: the rationals (default) or a prime field F_p.

The active field is a session-wide setting. Every coefficient that enters an
:class:`~leavitt.algebra.Element` passes through :func:`scalar`, so switching
the field changes how literals are interpreted from then on. Elements built
under one field must not be mixed with elements built under another.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq


class FieldError(ValueError):
    pass


class GF:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, GF):
            if other.p != self.p:
                raise FieldError(f"mixing F_{self.p} and F_{other.p}")
            return other
        if isinstance(other, int):
            return GF(other, self.p)
        if isinstance(other, Rational):
            return GF(int(other.numerator), self.p) / GF(int(other.denominator), self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF(self.v + o.v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF(self.v - o.v, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF(o.v - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF(self.v * o.v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.v == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return GF(self.v * pow(o.v, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return GF(-self.v, self.p)

    def __pos__(self):
        return self

    def __eq__(self, other):
        if isinstance(other, GF):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        if isinstance(other, Rational):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"GF({self.v}, {self.p})"

    def __str__(self):
        # print the representative closest to zero; reads better for -1
        v = self.v if self.v <= self.p // 2 else self.v - self.p
        return str(v)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


_characteristic = 0  # 0 means the rationals


def parse_field_spec(spec: str) -> int:
    """Parse ``rational`` or ``fp:<prime>`` into a characteristic (0 for Q)."""
    spec = spec.strip().lower()
    if spec in ("", "rational", "q"):
        return 0
    if spec.startswith("fp:"):
        try:
            p = int(spec[3:])
        except ValueError:
            raise FieldError(f"bad field spec {spec!r}") from None
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        return p
    raise FieldError(f"bad field spec {spec!r}; expected 'rational' or 'fp:<prime>'")


def set_field(spec: str | int) -> None:
    global _characteristic
    _characteristic = spec if isinstance(spec, int) else parse_field_spec(spec)
    if _characteristic and not _is_prime(_characteristic):
        raise FieldError(f"{_characteristic} is not prime")


def characteristic() -> int:
    return _characteristic


def field_name() -> str:
    return "Q" if _characteristic == 0 else f"F_{_characteristic}"


def field_from_env() -> None:
    """Apply ``LPA_FIELD`` if it is set."""
    spec = os.environ.get("LPA_FIELD")
    if spec:
        set_field(spec)


@contextmanager
def using_field(spec: str | int):
    """Temporarily switch the session field."""
    global _characteristic
    saved = _characteristic
    set_field(spec)
    try:
        yield
    finally:
        _characteristic = saved


def scalar(x) -> int | mpq | GF:
    """Coerce ``x`` into the active field.

    In rational mode integral values come back as ``int`` and everything else
    as a gmpy2 ``mpq``. Both compare and hash like ``Fraction``.
    """
    p = _characteristic
    if p == 0:
        # integral rationals are kept as int: same value, much cheaper arithmetic
        if isinstance(x, int) and not isinstance(x, bool):
            return x
        if isinstance(x, (str, Rational)):
            x = mpq(x)
            return int(x.numerator) if x.denominator == 1 else x
        if isinstance(x, GF):
            raise FieldError("prime-field scalar used in rational mode")
        raise TypeError(f"cannot make an exact scalar from {x!r}")
    if isinstance(x, GF):
        if x.p != p:
            raise FieldError(f"scalar from F_{x.p} used in F_{p} mode")
        return x
    if isinstance(x, int):
        return GF(x, p)
    if isinstance(x, (str, Rational)):
        x = Fraction(x) if isinstance(x, str) else x
        n, d = int(x.numerator), int(x.denominator)
        if d % p == 0:
            raise FieldError(f"{x} has no image in F_{p}")
        return GF(n, p) / GF(d, p)
    raise TypeError(f"cannot make an exact scalar from {x!r}")


def reciprocal(c):
    """``1/c`` computed exactly (never a float)."""
    if isinstance(c, GF):
        return GF(1, c.p) / c
    return mpq(1) / c


def format_scalar(c) -> str:
    return str(c)
