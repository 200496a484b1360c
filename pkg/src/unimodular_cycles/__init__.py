"""Exact rotation numbers and discrete curvature invariants of unimodular lattice cycles."""

from .cycles import (
    CyclicUnimodularSequence,
    EdgeCycle,
    TwelfthRational,
    UnimodularSequence,
    decomposition_holds,
    edge_cycle,
    rot_angle_float,
    rot_formula,
    rot_winding_exact,
    validate,
)
from .invariants import mu, mu_global, mu_via_equation, mu_via_product, nu_global, triple_invariants
from .lattice_core import Gl2Matrix, LatticeVector, det2, gl2_apply, is_primitive, nu
from .reduction import find_special_index, rot_by_reduction

__all__ = [
    "CyclicUnimodularSequence",
    "EdgeCycle",
    "Gl2Matrix",
    "LatticeVector",
    "TwelfthRational",
    "UnimodularSequence",
    "decomposition_holds",
    "det2",
    "edge_cycle",
    "find_special_index",
    "gl2_apply",
    "is_primitive",
    "mu",
    "mu_global",
    "mu_via_equation",
    "mu_via_product",
    "nu",
    "nu_global",
    "rot_angle_float",
    "rot_by_reduction",
    "rot_formula",
    "rot_winding_exact",
    "triple_invariants",
    "validate",
]
