"""Cyclic unimodular sequences, their edge cycles, and rotation numbers.

Three rotation computations live here: an exact ray/cone winding count, the
closed formula ``Rot = mu/12 + nu/4`` evaluated in exact twelfths, and a
floating-point angle sum used only as a sanity cross-check.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import NonIntegerRotation, NotUnimodularAt, TooShort
from .invariants import local_mus, local_nus
from .lattice_core import Gl2Matrix, LatticeVector, Vec, det2, gl2_apply


@dataclass(frozen=True)
class TwelfthRational:
    """An exact rational with denominator 12, stored as its numerator."""

    numerator: int = 0

    @classmethod
    def from_quarters(cls, quarters: int) -> "TwelfthRational":
        return cls(3 * quarters)

    def __add__(self, other: "TwelfthRational") -> "TwelfthRational":
        return TwelfthRational(self.numerator + other.numerator)

    def is_integer(self) -> bool:
        return self.numerator % 12 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, 12)

    def to_int(self, vectors=None) -> int:
        q, r = divmod(self.numerator, 12)
        if r:
            raise NonIntegerRotation(self.numerator, vectors)
        return q

    def __str__(self) -> str:
        return f"{self.numerator}/12"


def _check_chain(vectors: Sequence[Vec], cyclic: bool) -> None:
    d = len(vectors)
    last = d if cyclic else d - 1
    for i in range(last):
        u, v = vectors[i], vectors[(i + 1) % d]
        det = det2(u, v)
        if det != 1 and det != -1:
            raise NotUnimodularAt(i, det, (u, v))


def _as_vectors(vectors: Iterable[Sequence[int]]) -> tuple[LatticeVector, ...]:
    return tuple(v if type(v) is LatticeVector else LatticeVector.of(v) for v in vectors)


@dataclass(frozen=True)
class UnimodularSequence:
    """Open sequence whose consecutive pairs are lattice bases."""

    vectors: tuple[LatticeVector, ...]

    def __post_init__(self):
        object.__setattr__(self, "vectors", _as_vectors(self.vectors))
        if len(self.vectors) < 2:
            raise TooShort(f"need at least 2 vectors, got {len(self.vectors)}")
        _check_chain(self.vectors, cyclic=False)

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self) -> Iterator[LatticeVector]:
        return iter(self.vectors)

    def __getitem__(self, i):
        return self.vectors[i]


@dataclass(frozen=True)
class CyclicUnimodularSequence:
    """Sequence ``u_1 .. u_d`` (d >= 2) where ``(u_i, u_{i+1})`` and ``(u_d, u_1)`` are bases.

    Indices are 0-based and read modulo ``d``.
    """

    vectors: tuple[LatticeVector, ...]

    def __post_init__(self):
        object.__setattr__(self, "vectors", _as_vectors(self.vectors))
        if len(self.vectors) < 2:
            raise TooShort(f"need at least 2 vectors, got {len(self.vectors)}")
        _check_chain(self.vectors, cyclic=True)

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self) -> Iterator[LatticeVector]:
        return iter(self.vectors)

    def __getitem__(self, i):
        return self.vectors[i]

    def at(self, i: int) -> LatticeVector:
        """Cyclic access."""
        return self.vectors[i % len(self.vectors)]

    def reversed(self) -> "CyclicUnimodularSequence":
        return CyclicUnimodularSequence(self.vectors[::-1])

    def transformed(self, m: Gl2Matrix) -> "CyclicUnimodularSequence":
        return CyclicUnimodularSequence(tuple(gl2_apply(m, v) for v in self.vectors))

    def max_abs_coordinate(self) -> int:
        return max(max(abs(v[0]), abs(v[1])) for v in self.vectors)

    def to_json_obj(self) -> dict:
        return {"vectors": [[v.x, v.y] for v in self.vectors]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


def validate(vectors: Iterable[Sequence[int]]) -> CyclicUnimodularSequence:
    return CyclicUnimodularSequence(tuple(vectors))


def cycle_from_json_obj(obj) -> CyclicUnimodularSequence:
    if not isinstance(obj, dict) or "vectors" not in obj:
        raise ValueError('cycle JSON must be an object with a "vectors" field')
    vecs = obj["vectors"]
    if not isinstance(vecs, list):
        raise ValueError('"vectors" must be an array of [x, y] pairs')
    return validate(vecs)


def cycle_from_json(text: str) -> CyclicUnimodularSequence:
    return cycle_from_json_obj(json.loads(text))


class EdgeCycle:
    """Signed multiset of directed edges with cancellation of opposite edges.

    Edges are stored under a canonical key ``(p, q)`` with ``p < q``; an edge
    ``q -> p`` counts as multiplicity -1 on that key, so an edge and its reverse
    cancel on insertion and never coexist.
    """

    __slots__ = ("_counts",)

    def __init__(self, edges: Iterable[tuple[Vec, Vec]] = ()):
        self._counts: Counter = Counter()
        for p, q in edges:
            self.add(p, q)

    def add(self, p: Vec, q: Vec, multiplicity: int = 1) -> None:
        p, q = tuple(p), tuple(q)
        if p == q:
            return
        if p > q:
            p, q, multiplicity = q, p, -multiplicity
        key = (p, q)
        n = self._counts[key] + multiplicity
        if n:
            self._counts[key] = n
        else:
            del self._counts[key]

    def __add__(self, other: "EdgeCycle") -> "EdgeCycle":
        out = EdgeCycle()
        out._counts = self._counts.copy()
        for (p, q), m in other._counts.items():
            out.add(p, q, m)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, EdgeCycle):
            return NotImplemented
        return self._counts == other._counts

    def __len__(self) -> int:
        """Number of edges counted with multiplicity."""
        return sum(abs(m) for m in self._counts.values())

    def edges(self) -> list[tuple[tuple[int, int], tuple[int, int], int]]:
        """``(tail, head, multiplicity)`` with positive multiplicity, sorted."""
        out = []
        for (p, q), m in self._counts.items():
            out.append((p, q, m) if m > 0 else (q, p, -m))
        return sorted(out)

    def __repr__(self) -> str:
        return f"EdgeCycle({self.edges()!r})"


def edge_cycle(cycle: CyclicUnimodularSequence) -> EdgeCycle:
    v = cycle.vectors
    d = len(v)
    return EdgeCycle((v[i], v[(i + 1) % d]) for i in range(d))


def decomposition_holds(
    whole: CyclicUnimodularSequence,
    first: CyclicUnimodularSequence,
    second: CyclicUnimodularSequence,
) -> bool:
    return edge_cycle(whole) == edge_cycle(first) + edge_cycle(second)


def winding_directions() -> Iterator[tuple[int, int]]:
    """Fixed probe sequence ``(1,0), (1,1), (2,1), (3,1), ...``."""
    yield (1, 0)
    k = 1
    while True:
        yield (k, 1)
        k += 1


def _sgn(n: int) -> int:
    return (n > 0) - (n < 0)


def winding_with_direction(vectors: Sequence[Vec], r: Vec) -> int:
    """Signed count of polygon edges crossing the open ray through ``r``.

    ``r`` must not be collinear with any vertex.
    """
    rx, ry = r
    d = len(vectors)
    total = 0
    for i in range(d):
        u = vectors[i]
        w = vectors[(i + 1) % d]
        s = _sgn(u[0] * w[1] - u[1] * w[0])
        if _sgn(u[0] * ry - u[1] * rx) == s and _sgn(rx * w[1] - ry * w[0]) == s:
            total += s
    return total


def admissible_direction(vectors: Sequence[Vec]) -> tuple[int, int]:
    for r in winding_directions():
        if all(v[0] * r[1] - v[1] * r[0] != 0 for v in vectors):
            return r
    raise AssertionError("unreachable")


def rot_winding_exact(cycle: CyclicUnimodularSequence, direction: Vec | None = None) -> int:
    """Exact winding number of the closed polygon through the cycle's vectors.

    With ``direction`` given, it must avoid every vertex line; otherwise the
    first admissible direction from :func:`winding_directions` is used.
    """
    v = cycle.vectors
    if direction is None:
        direction = admissible_direction(v)
    elif any(det2(u, direction) == 0 for u in v):
        raise ValueError(f"direction {tuple(direction)} is collinear with a vertex")
    return winding_with_direction(v, direction)


def rot_formula_twelfths(cycle: CyclicUnimodularSequence) -> TwelfthRational:
    v = cycle.vectors
    return TwelfthRational(sum(local_mus(v)) + 3 * sum(local_nus(v)))


def rot_formula(cycle: CyclicUnimodularSequence) -> int:
    return rot_formula_twelfths(cycle).to_int(cycle.vectors)


def rot_angle_float(cycle: CyclicUnimodularSequence) -> float:
    v = cycle.vectors
    d = len(v)
    total = 0.0
    for i in range(d):
        u, w = v[i], v[(i + 1) % d]
        # atan2(det, dot) is the signed angle, i.e. nu times the unsigned angle
        total += math.atan2(u[0] * w[1] - u[1] * w[0], u[0] * w[0] + u[1] * w[1])
    return total / (2 * math.pi)
