"""Generalized mu-invariants in Z^(n+1) and degrees of unimodular maps.

For vectors ``a1, a2`` and ``b = (b_1, .., b_n)`` such that ``(a1, b)`` and
``(a2, b)`` are both lattice bases, the generalized invariants are the unique
integers ``mu_j`` with

    nu1 * a1 - nu2 * a2 + sum_j mu_j * b_j = 0,   nu_i = det(a_i, b_1, .., b_n).

With n = 1 this is the planar mu: ``mu_general(u, (v,), w).mus[0] == mu(u, v, w)``.

A unimodular map sends each facet of a closed oriented triangulated
d-manifold to a basis of Z^(d+1); its degree about the origin is computed by
counting the facet cones that contain a generic ray, signed by orientation.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .errors import (
    FacetNotUnimodular,
    IncoherentOrientation,
    InternalInconsistency,
    NotBasis,
    NotClosed,
    ShapeMismatch,
)
from .lattice_core import checked

VecN = Sequence[int]


def detN(rows: Sequence[VecN]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = len(rows)
    if m == 0 or any(len(r) != m for r in rows):
        raise ShapeMismatch(f"need a square matrix, got {m} rows of lengths {[len(r) for r in rows]}")
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(m - 1):
        if a[k][k] == 0:
            for i in range(k + 1, m):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return checked(sign * a[m - 1][m - 1])


def _cramer(rows: Sequence[VecN], target: VecN, det: int) -> list[int]:
    """Coordinates ``c`` with ``sum_k c[k] * rows[k] == target``; ``det`` is ``+-1``."""
    out = []
    for k in range(len(rows)):
        replaced = [target if i == k else r for i, r in enumerate(rows)]
        out.append(detN(replaced) * det)  # dividing by +-1 is multiplying by it
    return out


@dataclass(frozen=True)
class GeneralMuData:
    nu1: int
    nu2: int
    mus: tuple[int, ...]


def general_relation(a1: VecN, bs: Sequence[VecN], a2: VecN, data: GeneralMuData) -> tuple[int, ...]:
    """Left-hand side of the defining relation; all zeros when ``data`` is correct."""
    return tuple(
        data.nu1 * a1[i] - data.nu2 * a2[i] + sum(m * b[i] for m, b in zip(data.mus, bs))
        for i in range(len(a1))
    )


def mu_general(a1: VecN, bs: Sequence[VecN], a2: VecN) -> GeneralMuData:
    """Generalized mu-invariants of ``(a1, bs, a2)``.

    ``a2`` is written in the basis ``(a1, b_1, .., b_n)``; its ``b_j``
    coordinate times ``nu2`` is ``mu_j``. The result is re-checked against the
    defining relation.
    """
    dim = len(a1)
    if len(bs) != dim - 1 or len(a2) != dim or any(len(b) != dim for b in bs):
        raise ShapeMismatch(f"need n = {dim - 1} vectors b in dimension {dim}")
    basis1 = [a1, *bs]
    nu1 = detN(basis1)
    nu2 = detN([a2, *bs])
    if nu1 not in (1, -1) or nu2 not in (1, -1):
        raise NotBasis(f"det(a1, b) = {nu1}, det(a2, b) = {nu2}; both must be +-1", det=nu1 if nu1 not in (1, -1) else nu2)
    coords = _cramer(basis1, a2, nu1)
    data = GeneralMuData(nu1, nu2, tuple(checked(nu2 * c) for c in coords[1:]))
    if any(general_relation(a1, bs, a2, data)):
        raise InternalInconsistency(f"generalized mu relation fails for {a1}, {bs}, {a2}")
    return data


@dataclass(frozen=True)
class TriangulatedCycle:
    """Oriented triangulated closed d-manifold (d in {1, 2}) with lattice images.

    ``images[v]`` is the image of vertex id ``v`` in Z^(d+1); each facet is an
    ordered tuple of d+1 vertex ids whose order carries the orientation.
    """

    dimension: int
    images: dict
    facets: tuple[tuple[int, ...], ...]

    @classmethod
    def from_json_obj(cls, obj: dict) -> "TriangulatedCycle":
        try:
            dim = int(obj["dimension"])
            images = {}
            for vert in obj["vertices"]:
                vid = int(vert["id"])
                if vid in images:
                    raise ValueError(f"duplicate vertex id {vid}")
                images[vid] = tuple(checked(int(c)) for c in vert["image"])
            facets = tuple(tuple(int(x) for x in f) for f in obj["facets"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad triangulation JSON: {exc}") from exc
        return cls(dim, images, facets)

    @classmethod
    def from_json(cls, text: str) -> "TriangulatedCycle":
        return cls.from_json_obj(json.loads(text))

    def to_json_obj(self) -> dict:
        return {
            "dimension": self.dimension,
            "vertices": [{"id": k, "image": list(v)} for k, v in sorted(self.images.items())],
            "facets": [list(f) for f in self.facets],
        }

    @classmethod
    def from_cycle(cls, vectors: Sequence[VecN]) -> "TriangulatedCycle":
        """The 1-dimensional map of a cyclic sequence: vertex i -> u_i, facets (i, i+1)."""
        d = len(vectors)
        return cls(1, {i: tuple(v) for i, v in enumerate(vectors)}, tuple((i, (i + 1) % d) for i in range(d)))

    def facet_images(self, facet: Sequence[int]) -> list[tuple[int, ...]]:
        return [self.images[v] for v in facet]

    def reoriented(self) -> "TriangulatedCycle":
        """Same complex with every facet orientation reversed."""
        flipped = tuple((f[1], f[0], *f[2:]) for f in self.facets)
        return TriangulatedCycle(self.dimension, self.images, flipped)

    def mapped(self, matrix: Sequence[VecN]) -> "TriangulatedCycle":
        """Compose the map with an integer matrix acting on column vectors."""
        images = {
            k: tuple(checked(sum(row[i] * v[i] for i in range(len(v)))) for row in matrix)
            for k, v in self.images.items()
        }
        return TriangulatedCycle(self.dimension, images, self.facets)


def facet_determinants(t: TriangulatedCycle) -> list[int]:
    return [detN(t.facet_images(f)) for f in t.facets]


def validate_unimodular_map(t: TriangulatedCycle) -> TriangulatedCycle:
    """Check closedness, coherent orientation and unimodularity of every facet."""
    d = t.dimension
    if d not in (1, 2):
        raise ValueError(f"only dimensions 1 and 2 are supported, got {d}")
    if not t.facets:
        raise NotClosed("no facets")
    for idx, f in enumerate(t.facets):
        if len(f) != d + 1 or len(set(f)) != d + 1:
            raise ShapeMismatch(f"facet {idx} {f} must list {d + 1} distinct vertices")
        for v in f:
            if v not in t.images:
                raise ShapeMismatch(f"facet {idx} uses unknown vertex {v}")
            if len(t.images[v]) != d + 1:
                raise ShapeMismatch(f"vertex {v} image must have {d + 1} coordinates")

    if d == 1:
        balance = Counter()
        for a, b in t.facets:
            balance[a] += 1
            balance[b] -= 1
        bad = sorted(v for v, n in balance.items() if n)
        if bad:
            raise NotClosed(f"vertices {bad} have unequal in- and out-degree")
    else:
        directed = Counter()
        for a, b, c in t.facets:
            for e in ((a, b), (b, c), (c, a)):
                directed[e] += 1
        undirected = Counter()
        for (a, b), n in directed.items():
            undirected[frozenset((a, b))] += n
        for e, n in undirected.items():
            if n != 2:
                raise NotClosed(f"edge {sorted(e)} lies in {n} facets, expected 2")
        for (a, b), n in directed.items():
            if n != 1:
                raise IncoherentOrientation(f"edge {a}->{b} is induced {n} times in the same direction")

    for idx, det in enumerate(facet_determinants(t)):
        if det not in (1, -1):
            raise FacetNotUnimodular(idx, det)
    return t


def degree_directions(dim: int) -> Iterator[tuple[int, ...]]:
    """``e_1``, then ``(1^p, 2^p, .., dim^p)`` for p = 0, 1, 2, ..."""
    yield (1,) + (0,) * (dim - 1)
    p = 0
    while True:
        yield tuple((i + 1) ** p for i in range(dim))
        p += 1


def _cone_signs(t: TriangulatedCycle, r: VecN) -> list[int] | None:
    """Per-facet contribution for direction ``r``, or None if ``r`` is degenerate."""
    out = []
    for f in t.facets:
        rows = t.facet_images(f)
        det = detN(rows)
        lam = _cramer(rows, r, det)
        if any(x == 0 for x in lam):
            return None
        out.append(det if all(x > 0 for x in lam) else 0)
    return out


def degree(t: TriangulatedCycle, direction: VecN | None = None) -> int:
    """Degree of the map about the origin; ``t`` must already be validated."""
    dims = t.dimension + 1
    if direction is not None:
        signs = _cone_signs(t, direction)
        if signs is None:
            raise ValueError(f"direction {tuple(direction)} lies on a facet cone boundary")
        return sum(signs)
    for r in degree_directions(dims):
        signs = _cone_signs(t, r)
        if signs is not None:
            return sum(signs)
    raise AssertionError("unreachable")


def _parity(seq: Sequence[int], ref: Sequence[int]) -> int:
    """Sign of the permutation taking ``ref`` to ``seq``."""
    pos = [ref.index(x) for x in seq]
    inversions = sum(1 for i, j in combinations(range(len(pos)), 2) if pos[i] > pos[j])
    return -1 if inversions % 2 else 1


def ridge_invariants(t: TriangulatedCycle) -> list[tuple[tuple[int, ...], GeneralMuData]]:
    """Generalized mu data across every ridge shared by two facets.

    The ridge vertices are taken in sorted id order; ``a1`` is the apex of the
    facet inducing the positive orientation on ``(apex, *ridge)``. For d = 1
    this reproduces the local planar mu at each vertex. Exposed for
    exploration only; no formula is asserted.
    """
    by_ridge: dict[tuple[int, ...], dict[int, int]] = {}
    for f in t.facets:
        for ridge in combinations(sorted(f), t.dimension):
            apex = next(v for v in f if v not in ridge)
            by_ridge.setdefault(ridge, {})[_parity((apex, *ridge), f)] = apex
    out = []
    for ridge, apexes in sorted(by_ridge.items()):
        if set(apexes) != {1, -1}:
            continue
        bs = [t.images[v] for v in ridge]
        out.append((ridge, mu_general(t.images[apexes[1]], bs, t.images[apexes[-1]])))
    return out


def simplex_sphere() -> TriangulatedCycle:
    """Boundary of a tetrahedron mapped to e1, e2, e3, (-1,-1,-1), outward oriented."""
    images = {0: (1, 0, 0), 1: (0, 1, 0), 2: (0, 0, 1), 3: (-1, -1, -1)}
    facets = ((2, 1, 3), (3, 0, 2), (1, 0, 3), (2, 0, 1))
    return TriangulatedCycle(2, images, facets)
