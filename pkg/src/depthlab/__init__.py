"""Graded homological algebra over F_p and depth formula checks."""

from .algebra import (
    InhomogeneousError, MonomialOrder, Polynomial, PolynomialRing, PolynomialSyntaxError, PrimeFieldElement,
    StructuralError,
)
from .checks import (
    FormulaReport, auslander_tor_check, dependency_bounds_check, depth_formula_check, one_dim_equivalence_check,
    regular_element_reduction, torsion_check,
)
from .groebner import GradedRing, buchberger, is_groebner, normal_form
from .homology import (
    ChainComplex, KoszulComplex, WindowError, ext, good_truncation_below, homology_at, koszul, tor,
)
from .invariants import complexity_estimate, depth_complex, depth_module, p_bound, q_bound
from .reducing import ReducingSequence, search_reducing_sequence, verify_reducing_sequence
from .resolve import BettiTable, ModuleHom, PresentedModule, Resolution, minimal_free_resolution, syzygy_module
from .session import Session, parse_description, serialize_description

__all__ = [
    "InhomogeneousError", "MonomialOrder", "Polynomial", "PolynomialRing", "PolynomialSyntaxError",
    "PrimeFieldElement", "StructuralError", "FormulaReport", "auslander_tor_check", "dependency_bounds_check",
    "depth_formula_check", "one_dim_equivalence_check", "regular_element_reduction", "torsion_check",
    "GradedRing", "buchberger", "is_groebner", "normal_form", "ChainComplex", "KoszulComplex", "WindowError",
    "ext", "good_truncation_below", "homology_at", "koszul", "tor", "complexity_estimate", "depth_complex",
    "depth_module", "p_bound", "q_bound", "ReducingSequence", "search_reducing_sequence",
    "verify_reducing_sequence", "BettiTable", "ModuleHom", "PresentedModule", "Resolution",
    "minimal_free_resolution", "syzygy_module", "Session", "parse_description", "serialize_description",
]
