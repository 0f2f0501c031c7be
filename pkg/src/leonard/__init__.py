"""Exact-arithmetic toolkit for Leonard systems: fields, parameter arrays,
split-form realizations, intersection numbers and the named families."""

from .field import Q, FieldElem, make_field
from .parray import D4Element, ParameterArray, complete_from_phi1, transform_d4, validate
from .system import Realization, build_split, extract_parray, verify_leonard
from .intersection import IntersectionData, brute_intersection, closed_forms
from .families import FamilySpec, closed_intersection, generate_parray, sample_admissible

__all__ = [
    "Q", "FieldElem", "make_field",
    "D4Element", "ParameterArray", "complete_from_phi1", "transform_d4", "validate",
    "Realization", "build_split", "extract_parray", "verify_leonard",
    "IntersectionData", "brute_intersection", "closed_forms",
    "FamilySpec", "closed_intersection", "generate_parray", "sample_admissible",
]
