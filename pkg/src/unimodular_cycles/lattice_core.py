"""Exact integer primitives on the plane lattice Z^2.

Coordinates are Python ints, but every produced value is range-checked against
the signed 64-bit interval so runaway growth fails loudly instead of silently
turning into huge numbers.
"""

from __future__ import annotations

from math import gcd
from typing import NamedTuple, Sequence

from .errors import CoordinateOverflow, NotUnimodular, ZeroVector

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


def checked(n: int) -> int:
    """Return ``n`` unchanged, raising :class:`CoordinateOverflow` outside int64."""
    if n < INT64_MIN or n > INT64_MAX:
        raise CoordinateOverflow(f"integer {n} outside signed 64-bit range")
    return n


class LatticeVector(NamedTuple):
    x: int
    y: int

    @classmethod
    def of(cls, v: Sequence[int]) -> "LatticeVector":
        """Build from any 2-sequence, checking type and range."""
        if len(v) != 2:
            raise ValueError(f"expected 2 coordinates, got {len(v)}")
        x, y = v
        if isinstance(x, bool) or isinstance(y, bool) or not isinstance(x, int) or not isinstance(y, int):
            raise TypeError(f"coordinates must be integers, got {v!r}")
        return cls(checked(x), checked(y))

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(checked(-self.x), checked(-self.y))

    def __add__(self, other) -> "LatticeVector":  # type: ignore[override]
        return LatticeVector(checked(self.x + other[0]), checked(self.y + other[1]))

    def __sub__(self, other) -> "LatticeVector":
        return LatticeVector(checked(self.x - other[0]), checked(self.y - other[1]))

    def scale(self, k: int) -> "LatticeVector":
        return LatticeVector(checked(k * self.x), checked(k * self.y))


Vec = Sequence[int]


def det2(u: Vec, v: Vec) -> int:
    return checked(u[0] * v[1] - u[1] * v[0])


def nu(u: Vec, v: Vec) -> int:
    """Orientation sign of a lattice basis; raises unless ``(u, v)`` is a basis."""
    d = det2(u, v)
    if d != 1 and d != -1:
        raise NotUnimodular(f"{tuple(u)}, {tuple(v)} is not a basis (det {d})", det=d)
    return d


def is_primitive(u: Vec) -> bool:
    if u[0] == 0 and u[1] == 0:
        raise ZeroVector("the zero vector has no primitivity")
    return gcd(u[0], u[1]) == 1


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, p, q)`` with ``a*p + b*q == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def complement(a: Vec) -> LatticeVector:
    """Canonical ``c`` with ``det2(a, c) == 1`` from the extended-gcd Bezout pair.

    Raises :class:`NotUnimodular` when ``a`` is not primitive.
    """
    g, p, q = ext_gcd(a[0], a[1])
    if g != 1:
        raise NotUnimodular(f"{tuple(a)} is not primitive, it has no complement")
    # a.x*p + a.y*q = 1  =>  det(a, (-q, p)) = a.x*p + a.y*q
    return LatticeVector(checked(-q), checked(p))


class Gl2Matrix(NamedTuple):
    """Integer matrix ``[[a, b], [c, d]]`` with determinant +-1."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def of(cls, a: int, b: int, c: int, d: int) -> "Gl2Matrix":
        det = a * d - b * c
        if det not in (1, -1):
            raise NotUnimodular(f"matrix [[{a},{b}],[{c},{d}]] has det {det}", det=det)
        return cls(checked(a), checked(b), checked(c), checked(d))

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "Gl2Matrix") -> "Gl2Matrix":  # type: ignore[override]
        return Gl2Matrix(
            checked(self.a * other.a + self.b * other.c),
            checked(self.a * other.b + self.b * other.d),
            checked(self.c * other.a + self.d * other.c),
            checked(self.c * other.b + self.d * other.d),
        )


IDENTITY = Gl2Matrix(1, 0, 0, 1)
# Standard generators: S (quarter turn), T (shear), R (reflection).
GEN_S = Gl2Matrix(0, -1, 1, 0)
GEN_T = Gl2Matrix(1, 1, 0, 1)
GEN_T_INV = Gl2Matrix(1, -1, 0, 1)
GEN_R = Gl2Matrix(1, 0, 0, -1)


def gl2_apply(m: Gl2Matrix, u: Vec) -> LatticeVector:
    return LatticeVector(checked(m.a * u[0] + m.b * u[1]), checked(m.c * u[0] + m.d * u[1]))
