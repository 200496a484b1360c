import json
import math
import random

import pytest
from hypothesis import given, settings

from strategies import random_gl2, seeds
from unimodular_cycles.cycles import (
    EdgeCycle,
    TwelfthRational,
    UnimodularSequence,
    cycle_from_json,
    decomposition_holds,
    edge_cycle,
    rot_angle_float,
    rot_formula,
    rot_formula_twelfths,
    rot_winding_exact,
    validate,
    winding_directions,
)
from unimodular_cycles.errors import NonIntegerRotation, NotUnimodularAt, TooShort
from unimodular_cycles.generation import GeneratorParams, random_cycle
from unimodular_cycles.lattice_core import GEN_R, det2

TRIANGLE = ((1, 0), (0, 1), (-1, -1))
NEG_TRIANGLE = ((1, 0), (0, 1), (1, -1))
SQUARE = ((1, 0), (0, 1), (-1, 0), (0, -1))


def test_validate():
    assert len(validate(TRIANGLE)) == 3
    with pytest.raises(NotUnimodularAt) as info:
        validate([(1, 0), (2, 1), (0, 1)])
    assert info.value.index == 1 and info.value.det == 2
    with pytest.raises(TooShort):
        validate([(1, 0)])


def test_validate_checks_wraparound():
    with pytest.raises(NotUnimodularAt) as info:
        validate([(1, 0), (0, 1), (-1, 2)])
    assert info.value.index == 2


def test_open_sequence_skips_wraparound():
    assert len(UnimodularSequence(((1, 0), (0, 1), (-1, 2)))) == 3


def test_json_round_trip():
    cycle = validate(TRIANGLE)
    assert cycle_from_json(cycle.to_json()) == cycle
    assert json.loads(cycle.to_json()) == {"vectors": [[1, 0], [0, 1], [-1, -1]]}


def test_edge_cycle_examples():
    assert len(edge_cycle(validate(SQUARE))) == 4
    assert len(edge_cycle(validate(((1, 0), (0, 1))))) == 0
    # a, x, a as a 4-cycle (a, x, a, x) also cancels completely
    assert len(edge_cycle(validate(((1, 0), (0, 1), (1, 0), (0, 1))))) == 0


def test_edge_cycle_cancellation():
    e = EdgeCycle([((0, 1), (1, 0))])
    e.add((1, 0), (0, 1))
    assert len(e) == 0
    e.add((1, 0), (0, 1))
    assert e.edges() == [((1, 0), (0, 1), 1)]


def test_decomposition_examples():
    square = validate(SQUARE)
    pair = validate(((1, 0), (0, 1)))
    assert decomposition_holds(square, square, pair)
    # triangle removal from the pentagon fan
    pent = validate(((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1)))
    rest = validate(((1, 0), (-1, 1), (-1, 0), (0, -1)))
    tri = validate(((1, 0), (0, 1), (-1, 1)))
    assert decomposition_holds(pent, rest, tri)
    assert not decomposition_holds(square, validate(TRIANGLE), validate(NEG_TRIANGLE))


@pytest.mark.parametrize(
    "vectors, expected",
    [(TRIANGLE, 1), (NEG_TRIANGLE, 0), (SQUARE, 1), (((1, 0), (0, 1)), 0)],
)
def test_rotation_examples(vectors, expected):
    cycle = validate(vectors)
    assert rot_winding_exact(cycle) == expected
    assert rot_formula(cycle) == expected
    assert rot_angle_float(cycle) == pytest.approx(expected, abs=1e-9)


def test_formula_in_twelfths():
    assert rot_formula_twelfths(validate(TRIANGLE)) == TwelfthRational(12)
    assert rot_formula_twelfths(validate(NEG_TRIANGLE)) == TwelfthRational(0)


def test_twelfth_rational():
    q = TwelfthRational.from_quarters(1)
    assert q.numerator == 3 and not q.is_integer()
    with pytest.raises(NonIntegerRotation):
        q.to_int()
    assert (q + q + q + q).to_int() == 1
    assert str(q) == "3/12"


def test_direction_sequence_prefix():
    it = winding_directions()
    assert [next(it) for _ in range(4)] == [(1, 0), (1, 1), (2, 1), (3, 1)]


def test_winding_rejects_collinear_direction():
    with pytest.raises(ValueError):
        rot_winding_exact(validate(TRIANGLE), direction=(2, 0))


def _cycle(seed, length=None):
    rng = random.Random(seed)
    return random_cycle(GeneratorParams(seed=seed, target_length=length or rng.randint(2, 40)))


@settings(max_examples=200)
@given(seeds)
def test_direction_independence(seed):
    cycle = _cycle(seed)
    values = set()
    for r in [(1, 0), (0, 1), (1, 1), (-1, 1), (2, 1), (3, -7), (-5, -2), (11, 13)]:
        if all(det2(v, r) != 0 for v in cycle):
            values.add(rot_winding_exact(cycle, direction=r))
    assert values == {rot_winding_exact(cycle)}


@settings(max_examples=200)
@given(seeds)
def test_formula_matches_winding_and_angles(seed):
    cycle = _cycle(seed)
    w = rot_winding_exact(cycle)
    assert rot_formula(cycle) == w
    assert abs(rot_angle_float(cycle) - w) < 1e-6


@settings(max_examples=200)
@given(seeds)
def test_reversal_and_gl2(seed):
    cycle = _cycle(seed)
    w = rot_winding_exact(cycle)
    assert rot_winding_exact(cycle.reversed()) == -w
    m = random_gl2(random.Random(seed))
    assert rot_winding_exact(cycle.transformed(m)) == m.det * w
    assert rot_winding_exact(cycle.transformed(GEN_R)) == -w


def test_float_angle_is_signed():
    # one quarter turn per edge, counted with the sign of the determinant
    cycle = validate(SQUARE[::-1])
    assert rot_angle_float(cycle) == pytest.approx(-1.0)
    assert math.isclose(rot_angle_float(validate(((1, 0), (0, 1)))), 0.0, abs_tol=1e-12)
