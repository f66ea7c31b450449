"""Exact computations with commutative pre-semifields of odd order.

The main entry points are re-exported here; see the submodules for details.
"""

from __future__ import annotations

from .families import (FamilyConditionError, FamilySParams, albert, b3, b4, bh, cg, cm_dy, dickson,
                       family_s, family_s_count_bounds, field_pair, field_square, ganley,
                       predicted_nuclei, zhou_pott, zkw)
from .gf import FieldCtx, FieldError, decompose_square, make_field
from .isotopy import (Isotopism, OrbitReport, Verdict, albert_identification, b4_class_bound, compare,
                      count_classes_family_s, degree_pattern_screen, dickson_reduction_q1, orbit_of_a,
                      qbar_isotopism, strong_vs_plain_isotopy, verify_isotopism, zp_noniso_check)
from .linmap import LinMap
from .maps import BiprojPair, DOPoly, PairMap
from .ntheory import gcd_pm, zsigmondy_prime
from .planarity import certify, is_planar_biproj, is_planar_bruteforce
from .presemifield import Presemifield, polarize, unitalize
from .structure import (CentralizerReport, NucleiReport, centralizer_enumerate, nuclei, nuclei_of,
                        verify_autotopism)

__all__ = [
    "FamilyConditionError", "FamilySParams", "albert", "b3", "b4", "bh", "cg", "cm_dy", "dickson",
    "family_s", "family_s_count_bounds", "field_pair", "field_square", "ganley", "predicted_nuclei",
    "zhou_pott", "zkw", "FieldCtx", "FieldError", "decompose_square", "make_field", "Isotopism",
    "OrbitReport", "Verdict", "albert_identification", "b4_class_bound", "compare",
    "count_classes_family_s", "degree_pattern_screen", "dickson_reduction_q1", "orbit_of_a",
    "qbar_isotopism", "strong_vs_plain_isotopy", "verify_isotopism", "zp_noniso_check", "LinMap",
    "BiprojPair", "DOPoly", "PairMap", "gcd_pm", "zsigmondy_prime", "certify", "is_planar_biproj",
    "is_planar_bruteforce", "Presemifield", "polarize", "unitalize", "CentralizerReport",
    "NucleiReport", "centralizer_enumerate", "nuclei", "nuclei_of", "verify_autotopism",
]
