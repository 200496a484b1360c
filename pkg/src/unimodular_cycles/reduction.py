"""Rotation number by inductive cycle reduction.

The working cycle is repeatedly cut at a window whose local mu is -1, 0 or +1:

* ``u[j+1] == u[j-1]``: the cycle goes back and forth, prune two entries;
* ``mu == +-1``: ``(u[j-1], u[j+1])`` is a basis, detach the triangle;
* ``mu == 0`` otherwise: ``u[j+1] == -u[j-1]``, detach a special 4-cycle.

Triangles and 4-cycles have closed-form rotation numbers, so the total is
accumulated exactly in twelfths. Such a window always exists for d >= 3; not
finding one is reported as :class:`LemmaViolated`.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Sequence

from .cycles import (
    CyclicUnimodularSequence,
    TwelfthRational,
    decomposition_holds,
    edge_cycle,
)
from .errors import (
    AdditivityViolation,
    FragmentTooShort,
    LemmaViolated,
    NoRepeat,
    PatternMismatch,
    PreconditionFailed,
)
from .invariants import _mu_unchecked, local_mus, local_nus, triangle_rotation_twelfths
from .lattice_core import LatticeVector, Vec, det2


class StepKind(str, Enum):
    PRUNE_BACKTRACK = "PruneBacktrack"
    SPLIT_TRIANGLE = "SplitTriangle"
    SPLIT_QUAD = "SplitQuad"
    SPLIT_AT_REPEAT = "SplitAtRepeat"
    BASE_TRIANGLE = "BaseTriangle"
    BASE_PAIR = "BasePair"


class ReductionStep(NamedTuple):
    kind: StepKind
    index: int | None  # 0-based position in the working cycle
    detached: tuple[LatticeVector, ...]
    contribution: TwelfthRational
    length_before: int
    length_after: int
    second_index: int | None = None  # only for SplitAtRepeat

    def to_json_obj(self) -> dict:
        obj = {
            "kind": self.kind.value,
            "index": self.index,
            "detached": [[v[0], v[1]] for v in self.detached],
            "contribution_twelfths": self.contribution.numerator,
            "length_before": self.length_before,
            "length_after": self.length_after,
        }
        if self.second_index is not None:
            obj["second_index"] = self.second_index
        return obj


@dataclass
class ReductionTrace:
    steps: list[ReductionStep] = field(default_factory=list)
    total: TwelfthRational = TwelfthRational(0)

    def append(self, step: ReductionStep) -> None:
        self.steps.append(step)
        self.total = self.total + step.contribution

    def kinds(self) -> list[StepKind]:
        return [s.kind for s in self.steps]

    def to_json_obj(self) -> dict:
        return {
            "steps": [s.to_json_obj() for s in self.steps],
            "total_twelfths": self.total.numerator,
        }


def _is_special(a: Vec, b: Vec, c: Vec) -> bool:
    m = _mu_unchecked(a, b, c)
    return -1 <= m <= 1


def find_special_index(cycle: CyclicUnimodularSequence) -> int:
    """Smallest 0-based ``j`` whose window ``(u[j-1], u[j], u[j+1])`` has mu in {-1, 0, 1}."""
    v = cycle.vectors
    d = len(v)
    if d < 3:
        raise PreconditionFailed("find_special_index needs a cycle of length >= 3")
    for j in range(d):
        if _is_special(v[j - 1], v[j], v[(j + 1) % d]):
            return j
    raise LemmaViolated(f"no window with mu in {{-1,0,1}} in {[list(x) for x in v]}")


def _drop(v: Sequence, positions: set[int]) -> tuple:
    return tuple(x for k, x in enumerate(v) if k not in positions)


def prune_backtrack(cycle: CyclicUnimodularSequence, j: int) -> CyclicUnimodularSequence:
    """Remove ``u[j], u[j+1]`` from a window ``a, x, a`` (leaving ``a``)."""
    v = cycle.vectors
    d = len(v)
    j %= d
    if d < 4 or v[(j + 1) % d] != v[j - 1]:
        raise PatternMismatch(f"no back-and-forth pattern a, x, a at index {j}")
    return CyclicUnimodularSequence(_drop(v, {j, (j + 1) % d}))


def split_triangle(
    cycle: CyclicUnimodularSequence, j: int
) -> tuple[CyclicUnimodularSequence, CyclicUnimodularSequence]:
    """Detach the triangle ``(u[j-1], u[j], u[j+1])``; returns ``(rest, triangle)``."""
    v = cycle.vectors
    d = len(v)
    j %= d
    if d < 4:
        raise PreconditionFailed("split_triangle needs a cycle of length >= 4")
    a, b = v[j - 1], v[(j + 1) % d]
    det = det2(a, b)
    if det not in (1, -1):
        raise PreconditionFailed(f"det(u[j-1], u[j+1]) = {det} is not +-1")
    rest = CyclicUnimodularSequence(_drop(v, {j}))
    return rest, CyclicUnimodularSequence((a, v[j], b))


def split_quad(
    cycle: CyclicUnimodularSequence, j: int
) -> tuple[CyclicUnimodularSequence, CyclicUnimodularSequence]:
    """Detach ``(u[j-1], u[j], u[j+1], u[j+2])`` when ``u[j+1] == -u[j-1]``."""
    v = cycle.vectors
    d = len(v)
    j %= d
    if d < 4:
        raise PreconditionFailed("split_quad needs a cycle of length >= 4")
    a, c = v[j - 1], v[(j + 1) % d]
    if c[0] != -a[0] or c[1] != -a[1]:
        raise PreconditionFailed(f"u[j+1] = {tuple(c)} is not -u[j-1] = {tuple(-a)}")
    quad = (a, v[j], c, v[(j + 2) % d])
    rest = CyclicUnimodularSequence(_drop(v, {j, (j + 1) % d}))
    return rest, CyclicUnimodularSequence(quad)


def split_at_repeat(
    cycle: CyclicUnimodularSequence, i: int, j: int
) -> tuple[CyclicUnimodularSequence, CyclicUnimodularSequence]:
    """Shortcut decomposition at a repeated vector ``u[i] == u[j]``.

    Returns ``(u[i] .. u[j-1], u[j] .. u[i-1])``, both read cyclically.
    """
    v = cycle.vectors
    d = len(v)
    i %= d
    j %= d
    if i == j or v[i] != v[j]:
        raise NoRepeat(f"u[{i}] and u[{j}] are not a repeated vector")
    if i > j:
        i, j = j, i
    first = v[i:j]
    second = v[j:] + v[:i]
    if len(first) < 2 or len(second) < 2:
        raise FragmentTooShort(f"fragments of lengths {len(first)} and {len(second)}")
    return CyclicUnimodularSequence(first), CyclicUnimodularSequence(second)


def split_along_path(
    cycle: CyclicUnimodularSequence, i: int, j: int, inner: Sequence[Vec] = ()
) -> tuple[CyclicUnimodularSequence, CyclicUnimodularSequence]:
    """General splitting along a unimodular shortcut ``X = u[i], *inner, u[j]``.

    Returns ``(u[j+1] .. u[i-1] + X, u[i+1] .. u[j-1] + reversed(X))``. Either
    result failing validation raises the usual :class:`NotUnimodularAt`.
    """
    v = cycle.vectors
    d = len(v)
    i %= d
    j %= d
    if i == j:
        raise PreconditionFailed("shortcut endpoints must differ")
    path = (v[i], *(LatticeVector.of(x) for x in inner), v[j])
    # positions strictly between, walking forward cyclically
    between_ij = [v[(i + k) % d] for k in range(1, (j - i) % d)]
    between_ji = [v[(j + k) % d] for k in range(1, (i - j) % d)]
    first = tuple(between_ji) + path
    second = tuple(between_ij) + path[::-1]
    if len(first) < 2 or len(second) < 2:
        raise FragmentTooShort(f"fragments of lengths {len(first)} and {len(second)}")
    return CyclicUnimodularSequence(first), CyclicUnimodularSequence(second)


def check_split(
    whole: CyclicUnimodularSequence,
    first: CyclicUnimodularSequence,
    second: CyclicUnimodularSequence | None = None,
) -> None:
    """Assert mu, nu additivity and edge-cycle decomposition for one split.

    With ``second`` omitted, ``first`` must carry the same mu, nu and edge
    cycle as ``whole`` (the pruning case).
    """
    parts = [first] if second is None else [first, second]
    mu_w = sum(local_mus(whole.vectors))
    nu_w = sum(local_nus(whole.vectors))
    mu_p = sum(sum(local_mus(p.vectors)) for p in parts)
    nu_p = sum(sum(local_nus(p.vectors)) for p in parts)
    if mu_w != mu_p or nu_w != nu_p:
        raise AdditivityViolation(
            f"mu {mu_w} vs {mu_p}, nu {nu_w} vs {nu_p} splitting {[list(x) for x in whole]}"
        )
    if second is None:
        ok = edge_cycle(whole) == edge_cycle(first)
    else:
        ok = decomposition_holds(whole, first, second)
    if not ok:
        raise AdditivityViolation(f"edge cycle does not decompose for {[list(x) for x in whole]}")


def _raw_stats(vecs: Sequence[Vec]) -> tuple[int, int, dict]:
    """``(mu, nu, signed edge counts)`` of a raw cyclic sequence, checking unimodularity."""
    d = len(vecs)
    mu_total = nu_total = 0
    edges: dict = {}
    for i in range(d):
        a, x, b = vecs[i - 1], vecs[i], vecs[(i + 1) % d]
        n_ax = a[0] * x[1] - a[1] * x[0]
        n_xb = x[0] * b[1] - x[1] * b[0]
        if n_xb != 1 and n_xb != -1:
            raise AdditivityViolation(f"split produced a non-unimodular pair {tuple(x)}, {tuple(b)}")
        mu_total += n_ax * n_xb * (b[0] * a[1] - b[1] * a[0])
        nu_total += n_xb
        p, q = tuple(x), tuple(b)
        if p < q:
            edges[(p, q)] = edges.get((p, q), 0) + 1
        else:
            edges[(q, p)] = edges.get((q, p), 0) - 1
    return mu_total, nu_total, {k: m for k, m in edges.items() if m}


def _check_raw_split(whole: tuple, rest: tuple, part: tuple | None, where: str) -> None:
    mu_w, nu_w, e_w = whole
    mu_r, nu_r, e_r = rest
    if part is not None:
        mu_r += part[0]
        nu_r += part[1]
        e_r = dict(e_r)
        for k, m in part[2].items():
            e_r[k] = e_r.get(k, 0) + m
        e_r = {k: m for k, m in e_r.items() if m}
    if mu_w != mu_r or nu_w != nu_r:
        raise AdditivityViolation(f"{where}: mu {mu_w} vs {mu_r}, nu {nu_w} vs {nu_r}")
    if e_w != e_r:
        raise AdditivityViolation(f"{where}: edge cycle does not decompose")


class _Fenwick:
    """Prefix counts of live nodes, to turn node ids into working positions."""

    def __init__(self, n: int):
        self.n = n
        self.tree = [0] * (n + 1)
        for i in range(1, n + 1):
            self.tree[i] += 1
            parent = i + (i & -i)
            if parent <= n:
                self.tree[parent] += self.tree[i]

    def remove(self, i: int) -> None:
        i += 1
        while i <= self.n:
            self.tree[i] -= 1
            i += i & -i

    def rank(self, i: int) -> int:
        """Number of live nodes with id < i."""
        s = 0
        while i > 0:
            s += self.tree[i]
            i -= i & -i
        return s


def rot_by_reduction(
    cycle: CyclicUnimodularSequence, verify: bool = False
) -> tuple[int, ReductionTrace]:
    """Rotation number of ``cycle`` by reduction, with the full trace.

    The working cycle is a doubly linked list over the original positions, and
    candidate windows sit in a min-heap keyed by position, so the smallest
    qualifying window is found in O(log d) per step. With ``verify`` every step
    recomputes mu, nu and the edge cycle of the remaining cycle from scratch
    (O(d) each) and checks additivity against the detached piece.
    """
    v = cycle.vectors
    n = len(v)
    nxt = [(k + 1) % n for k in range(n)]
    prv = [(k - 1) % n for k in range(n)]
    alive = [True] * n
    live = n
    ranks = _Fenwick(n)
    trace = ReductionTrace()

    def special(k: int) -> bool:
        a, x, b = v[prv[k]], v[k], v[nxt[k]]
        m = (
            (a[0] * x[1] - a[1] * x[0])
            * (x[0] * b[1] - x[1] * b[0])
            * (b[0] * a[1] - b[1] * a[0])
        )
        return -1 <= m <= 1

    def unlink(k: int) -> None:
        nonlocal live
        p, q = prv[k], nxt[k]
        nxt[p] = q
        prv[q] = p
        alive[k] = False
        ranks.remove(k)
        live -= 1

    def current() -> CyclicUnimodularSequence:
        return CyclicUnimodularSequence(tuple(v[k] for k in range(n) if alive[k]))

    def walk(start: int) -> list:
        out = [v[start]]
        k = nxt[start]
        while k != start:
            out.append(v[k])
            k = nxt[k]
        return out

    whole_stats = _raw_stats(v) if verify else None
    heap = [k for k in range(n)] if n >= 4 else []
    heap = [k for k in heap if special(k)]
    heapq.heapify(heap)

    while live >= 4:
        while heap and not (alive[heap[0]] and special(heap[0])):
            heapq.heappop(heap)
        if not heap:
            raise LemmaViolated(f"no window with mu in {{-1,0,1}} in {[list(x) for x in current()]}")
        j = heap[0]
        p, q = prv[j], nxt[j]
        a, x, b = v[p], v[j], v[q]
        pos = ranks.rank(j)
        d = live
        if a == b:
            unlink(j)
            unlink(q)
            touched = (p, nxt[p])
            step = ReductionStep(StepKind.PRUNE_BACKTRACK, pos, (x, b), TwelfthRational(0), d, d - 2)
            piece = None
        elif (beta := b[0] * a[1] - b[1] * a[0]) in (1, -1):
            unlink(j)
            touched = (p, q)
            tri = (a, x, b)
            alpha = x[0] * b[1] - x[1] * b[0]
            gamma = a[0] * x[1] - a[1] * x[0]
            step = ReductionStep(
                StepKind.SPLIT_TRIANGLE, pos, tri,
                TwelfthRational(3 * (alpha * beta * gamma + alpha + beta + gamma)), d, d - 1,
            )
            piece = tri
        else:
            if b[0] != -a[0] or b[1] != -a[1]:
                raise LemmaViolated(f"window at {pos} has mu 0 but u[j+1] != +-u[j-1]")
            c = v[nxt[q]]
            quad = (a, x, b, c)
            unlink(j)
            unlink(q)
            touched = (p, nxt[p])
            nu_quad = det2(a, x) + det2(x, b) + det2(b, c) + det2(c, a)
            step = ReductionStep(
                StepKind.SPLIT_QUAD, pos, quad, TwelfthRational.from_quarters(nu_quad), d, d - 2,
            )
            piece = quad
        trace.append(step)
        if verify:
            rest_stats = _raw_stats(walk(p))
            part_stats = _raw_stats(piece) if piece is not None else None
            _check_raw_split(whole_stats, rest_stats, part_stats, f"step {len(trace.steps)} {step.kind.value}")
            whole_stats = rest_stats
        if live >= 4:
            for k in touched:
                if special(k):
                    heapq.heappush(heap, k)

    rest = tuple(v[k] for k in range(n) if alive[k])
    if live == 3:
        trace.append(
            ReductionStep(
                StepKind.BASE_TRIANGLE, None, rest,
                TwelfthRational(triangle_rotation_twelfths(*rest)), 3, 0,
            )
        )
    else:
        trace.append(ReductionStep(StepKind.BASE_PAIR, None, rest, TwelfthRational(0), 2, 0))
    return trace.total.to_int(v), trace
