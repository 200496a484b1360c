"""Building valid sequences: reconstruction from curvature data and random synthesis.

Random cycles are grown from a seed triangle by moves that are inverses of the
reduction steps, so every intermediate cycle is valid by construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .cycles import CyclicUnimodularSequence, UnimodularSequence
from .errors import BadFirstNu, CoordinateOverflow, InternalInconsistency, LatticeError
from .invariants import _mu_unchecked
from .lattice_core import (
    GEN_R,
    GEN_S,
    GEN_T,
    GEN_T_INV,
    IDENTITY,
    Gl2Matrix,
    LatticeVector,
    Vec,
    checked,
    complement,
    det2,
    gl2_apply,
)


@dataclass(frozen=True)
class CurvatureData:
    u1: LatticeVector
    u2: LatticeVector
    nus: tuple[int, ...]  # length n - 1
    mus: tuple[int, ...]  # length n - 2

    def to_json_obj(self) -> dict:
        return {
            "u1": list(self.u1),
            "u2": list(self.u2),
            "nus": list(self.nus),
            "mus": list(self.mus),
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "CurvatureData":
        try:
            return cls(
                LatticeVector.of(obj["u1"]),
                LatticeVector.of(obj["u2"]),
                tuple(int(x) for x in obj["nus"]),
                tuple(int(x) for x in obj["mus"]),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad curvature data: {exc}") from exc


def reconstruct(data: CurvatureData) -> UnimodularSequence:
    """The unique unimodular sequence starting ``u1, u2`` with the given nu and mu values.

    Uses ``u[k+1] = -nu[k] * (nu[k-1] * u[k-1] + mu[k] * u[k])``.
    """
    u1, u2 = LatticeVector.of(data.u1), LatticeVector.of(data.u2)
    nus, mus = tuple(data.nus), tuple(data.mus)
    if not nus or nus[0] != det2(u1, u2) or nus[0] not in (1, -1):
        raise BadFirstNu(f"first nu must equal det(u1, u2) = {det2(u1, u2)} and be +-1")
    if any(n not in (1, -1) for n in nus):
        raise ValueError(f"nu values must be +-1, got {nus}")
    if len(mus) != len(nus) - 1:
        raise ValueError(f"need {len(nus) - 1} mu values, got {len(mus)}")
    out = [u1, u2]
    for k in range(1, len(nus)):
        prev, cur = out[k - 1], out[k]
        s, m, t = nus[k - 1], mus[k - 1], nus[k]
        out.append(
            LatticeVector(
                checked(-t * (s * prev[0] + m * cur[0])),
                checked(-t * (s * prev[1] + m * cur[1])),
            )
        )
    seq = UnimodularSequence(tuple(out))
    if extract_curvature(seq) != CurvatureData(u1, u2, nus, mus):
        raise InternalInconsistency(f"reconstruction does not reproduce {data}")
    return seq


def extract_curvature(seq: UnimodularSequence) -> CurvatureData:
    v = seq.vectors
    nus = tuple(det2(v[i], v[i + 1]) for i in range(len(v) - 1))
    mus = tuple(_mu_unchecked(v[i - 1], v[i], v[i + 1]) for i in range(1, len(v) - 1))
    return CurvatureData(v[0], v[1], nus, mus)


def insert_triangle_move(
    cycle: CyclicUnimodularSequence, j: int, s: int, t: int
) -> CyclicUnimodularSequence:
    """Insert ``s*u[j] + t*u[j+1]`` between positions ``j`` and ``j+1``."""
    if s not in (1, -1) or t not in (1, -1):
        raise ValueError("s and t must be +-1")
    v = cycle.vectors
    d = len(v)
    j %= d
    a, b = v[j], v[(j + 1) % d]
    new = LatticeVector(checked(s * a[0] + t * b[0]), checked(s * a[1] + t * b[1]))
    return CyclicUnimodularSequence(v[: j + 1] + (new,) + v[j + 1 :])


def insert_backtrack_move(
    cycle: CyclicUnimodularSequence, j: int, s: int, t: int
) -> CyclicUnimodularSequence:
    """Insert ``z, a`` after ``a = u[j]`` with ``z = s*a + t*c``, ``det(a, c) = 1``."""
    if t not in (1, -1):
        raise ValueError("t must be +-1")
    v = cycle.vectors
    d = len(v)
    j %= d
    a = v[j]
    c = complement(a)
    z = LatticeVector(checked(s * a[0] + t * c[0]), checked(s * a[1] + t * c[1]))
    return CyclicUnimodularSequence(v[: j + 1] + (z, a) + v[j + 1 :])


def insert_quad_move(
    cycle: CyclicUnimodularSequence, j: int, s: int, t: int
) -> CyclicUnimodularSequence:
    """Insert ``x, -a`` after ``a = u[j]`` with ``x = s*a + t*c``: a special 4-cycle glued on."""
    if t not in (1, -1):
        raise ValueError("t must be +-1")
    v = cycle.vectors
    d = len(v)
    j %= d
    a = v[j]
    c = complement(a)
    x = LatticeVector(checked(s * a[0] + t * c[0]), checked(s * a[1] + t * c[1]))
    return CyclicUnimodularSequence(v[: j + 1] + (x, -a) + v[j + 1 :])


SEED_TRIANGLE = (LatticeVector(1, 0), LatticeVector(0, 1), LatticeVector(-1, -1))

# The dihedral group of the square: magnitude-preserving GL2(Z) elements.
_SIGNED_PERMUTATIONS = (
    IDENTITY,
    GEN_S,
    GEN_S @ GEN_S,
    GEN_S @ GEN_S @ GEN_S,
    GEN_R,
    GEN_R @ GEN_S,
    GEN_R @ GEN_S @ GEN_S,
    GEN_R @ GEN_S @ GEN_S @ GEN_S,
)
_GENERATORS = (GEN_S, GEN_T, GEN_T_INV, GEN_R)


@dataclass(frozen=True)
class GeneratorParams:
    seed: int = 0
    target_length: int = 3
    shear_bound: int = 4
    # weights for: insert triangle, insert backtrack, insert special 4-cycle,
    # apply a signed permutation to the whole cycle
    moves: dict = field(
        default_factory=lambda: {"triangle": 6.0, "backtrack": 2.0, "quad": 1.0, "gl2": 1.0}
    )
    gl2_word_length: int = 8
    fan: bool = False
    max_attempts: int = 16

    def __post_init__(self):
        if self.target_length < 2:
            raise ValueError("target_length must be >= 2")
        if self.shear_bound < 0:
            raise ValueError("shear_bound must be non-negative")


def random_gl2_word(rng: random.Random, max_length: int) -> Gl2Matrix:
    m = IDENTITY
    for _ in range(rng.randint(0, max_length)):
        m = rng.choice(_GENERATORS) @ m
    return m


def _apply(m: Gl2Matrix, vecs: list) -> list:
    return [gl2_apply(m, v) for v in vecs]


def _grow(params: GeneratorParams, rng: random.Random) -> CyclicUnimodularSequence:
    # Works on a plain list and validates once at the end; each move keeps
    # the list cyclically unimodular (see the public insert_* moves).
    if params.fan:
        vecs = list(SEED_TRIANGLE)
        while len(vecs) < params.target_length:
            j = rng.randrange(len(vecs))
            a, b = vecs[j], vecs[(j + 1) % len(vecs)]
            vecs.insert(j + 1, LatticeVector(checked(a[0] + b[0]), checked(a[1] + b[1])))
        return CyclicUnimodularSequence(tuple(_apply(rng.choice(_SIGNED_PERMUTATIONS[:4]), vecs)))

    if params.target_length == 2:
        vecs = [LatticeVector(1, 0), LatticeVector(0, rng.choice((1, -1)))]
    else:
        vecs = list(SEED_TRIANGLE)
        if rng.random() < 0.5:
            vecs.reverse()
    names = list(params.moves)
    weights = [params.moves[k] for k in names]
    bound = params.shear_bound
    # Whole-cycle signed permutations are applied lazily: the list holds
    # preimages under ``pending``, which is orthogonal, so its inverse is its transpose.
    pending = IDENTITY
    while len(vecs) < params.target_length:
        room = params.target_length - len(vecs)
        move = rng.choices(names, weights)[0]
        j = rng.randrange(len(vecs))
        a = vecs[j]
        if move == "gl2":
            pending = rng.choice(_SIGNED_PERMUTATIONS) @ pending
        elif move == "triangle" or room < 2:
            b = vecs[(j + 1) % len(vecs)]
            s, t = rng.choice((1, -1)), rng.choice((1, -1))
            vecs.insert(j + 1, LatticeVector(checked(s * a[0] + t * b[0]), checked(s * a[1] + t * b[1])))
        elif move in ("backtrack", "quad"):
            inv = Gl2Matrix(pending.a, pending.c, pending.b, pending.d)
            real = gl2_apply(pending, a)
            c = complement(real)
            s, t = rng.randint(-bound, bound), rng.choice((1, -1))
            z = gl2_apply(inv, (checked(s * real[0] + t * c[0]), checked(s * real[1] + t * c[1])))
            vecs[j + 1 : j + 1] = (z, a) if move == "backtrack" else (z, -a)
        else:
            raise ValueError(f"unknown move {move!r}")
    final = random_gl2_word(rng, params.gl2_word_length) @ pending
    return CyclicUnimodularSequence(tuple(_apply(final, vecs)))


def random_cycle(params: GeneratorParams) -> CyclicUnimodularSequence:
    """A random valid cycle of exactly ``params.target_length`` vectors.

    Deterministic in ``params``. With ``params.fan`` only positive triangle
    insertions are used, giving convex fans (all nu = +1, winding 1), and the
    final transform is a rotation so orientation is kept.
    """
    rng = random.Random(params.seed)
    last: LatticeError | None = None
    for _ in range(params.max_attempts):
        try:
            return _grow(params, rng)
        except CoordinateOverflow as exc:
            last = exc
    raise CoordinateOverflow(
        f"generation overflowed {params.max_attempts} times for seed {params.seed}"
    ) from last


def random_unimodular_sequence(rng: random.Random, length: int, mu_bound: int = 2) -> UnimodularSequence:
    """Open unimodular sequence from a random basis and random curvature data."""
    m = random_gl2_word(rng, 6)
    u1, u2 = gl2_apply(m, (1, 0)), gl2_apply(m, (0, 1))
    nus = [det2(u1, u2)] + [rng.choice((1, -1)) for _ in range(length - 2)]
    mus = [rng.randint(-mu_bound, mu_bound) for _ in range(length - 2)]
    return reconstruct(CurvatureData(u1, u2, tuple(nus), tuple(mus)))


def campaign_instance(seed: int, index: int, max_length: int, min_length: int = 2) -> CyclicUnimodularSequence:
    """Cycle ``index`` of a campaign: task seed ``seed ^ index``, random length in range."""
    task_seed = seed ^ index
    length = random.Random(task_seed).randint(min_length, max_length)
    return random_cycle(GeneratorParams(seed=task_seed, target_length=length))
