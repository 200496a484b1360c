"""Planar discrete curvature invariants mu and nu.

``mu(u, v, w)`` is the integer ``a`` with ``det(u,v) u + det(v,w) w + a v = 0``.
Two independent evaluations are provided: a direct solve of that equation and
the product of the three pairwise determinants. They act as mutual oracles.
"""

from __future__ import annotations

from typing import NamedTuple, TYPE_CHECKING

from .errors import InternalInconsistency, NotCyclicUnimodular
from .lattice_core import Vec, checked, det2, nu

if TYPE_CHECKING:
    from .cycles import CyclicUnimodularSequence


class TripleInvariants(NamedTuple):
    alpha: int  # det(v, w)
    beta: int  # det(w, u)
    gamma: int  # det(u, v)
    mu: int


def mu_via_equation(u: Vec, v: Vec, w: Vec) -> int:
    """Solve ``det(u,v) u + det(v,w) w + a v = 0`` for ``a`` componentwise."""
    g = nu(u, v)
    a = nu(v, w)
    rx = -(g * u[0] + a * w[0])
    ry = -(g * u[1] + a * w[1])
    # v is primitive, so at least one coordinate is nonzero.
    if v[0] != 0:
        q, r = divmod(rx, v[0])
    else:
        q, r = divmod(ry, v[1])
    if r != 0 or q * v[0] != rx or q * v[1] != ry:
        raise InternalInconsistency(
            f"no integer solution for mu({tuple(u)}, {tuple(v)}, {tuple(w)})"
        )
    return checked(q)


def mu_via_product(u: Vec, v: Vec, w: Vec) -> int:
    return checked(nu(u, v) * nu(v, w) * det2(w, u))


mu = mu_via_product


def _mu_unchecked(u: Vec, v: Vec, w: Vec) -> int:
    # Caller guarantees (u, v) and (v, w) are bases.
    return (
        (u[0] * v[1] - u[1] * v[0])
        * (v[0] * w[1] - v[1] * w[0])
        * (w[0] * u[1] - w[1] * u[0])
    )


def local_mus(vectors) -> list[int]:
    """Local mu at each cyclic window ``(u[i-1], u[i], u[i+1])`` of a valid cycle."""
    d = len(vectors)
    return [_mu_unchecked(vectors[i - 1], vectors[i], vectors[(i + 1) % d]) for i in range(d)]


def local_nus(vectors) -> list[int]:
    d = len(vectors)
    return [det2(vectors[i], vectors[(i + 1) % d]) for i in range(d)]


def mu_global(cycle: "CyclicUnimodularSequence") -> int:
    return checked(sum(local_mus(cycle.vectors)))


def nu_global(cycle: "CyclicUnimodularSequence") -> int:
    return sum(local_nus(cycle.vectors))


def triple_invariants(u: Vec, v: Vec, w: Vec) -> TripleInvariants:
    alpha, beta, gamma = det2(v, w), det2(w, u), det2(u, v)
    for name, value in (("det(v,w)", alpha), ("det(w,u)", beta), ("det(u,v)", gamma)):
        if value not in (1, -1):
            raise NotCyclicUnimodular(f"{name} = {value} for triple {tuple(u)}, {tuple(v)}, {tuple(w)}", det=value)
    return TripleInvariants(alpha, beta, gamma, alpha * beta * gamma)


def triangle_rotation_twelfths(u: Vec, v: Vec, w: Vec) -> int:
    """Rotation of a cyclic unimodular triangle, ``(abc + a + b + c) / 4``, in twelfths."""
    t = triple_invariants(u, v, w)
    return 3 * (t.mu + t.alpha + t.beta + t.gamma)


# Algebraic identities. Each returns the two sides; callers compare.


def three_vector_identity(u: Vec, v: Vec, w: Vec) -> tuple[int, int]:
    """``det(u,v) w + det(v,w) u + det(w,u) v``; zero for all integer vectors."""
    a, b, c = det2(u, v), det2(v, w), det2(w, u)
    return (
        checked(a * w[0] + b * u[0] + c * v[0]),
        checked(a * w[1] + b * u[1] + c * v[1]),
    )


def exchange_sides(a: Vec, x: Vec, b: Vec, u: Vec, v: Vec) -> tuple[int, int]:
    return mu(a, x, b) + mu(u, x, v), mu(a, x, v) + mu(u, x, b)


def jacobi_sum(a: Vec, x: Vec, b: Vec, c: Vec) -> int:
    return mu(a, x, b) + mu(b, x, c) + mu(c, x, a)
