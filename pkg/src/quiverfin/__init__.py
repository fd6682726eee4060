"""Decide whether a quiver setting has finitely many representations up to isomorphism."""

from .algebra import AlgebraSpec, algebra_to_setting, check_or_conditions, finitely_many_orbits
from .classifier import classify, is_minimal_infinite
from .core import DimVector, Embedding, Quiver, QuiverSetting, bilinear_form, quadratic_form, tits_form
from .errors import CrossCheckError, DimensionLimitError, QuiverError, SearchBudgetExceeded
from .euclid import EuclideanType, EuclideanWitness, find_euclidean_witness, radical_vector, recognize_euclidean
from .formats import parse_algebra, parse_setting, serialize_setting
from .tits import Verdict, decide_by_tits, find_subroot, reduce_to_radical

__all__ = [
    "AlgebraSpec", "CrossCheckError", "DimVector", "DimensionLimitError", "Embedding", "EuclideanType",
    "EuclideanWitness", "Quiver", "QuiverError", "QuiverSetting", "SearchBudgetExceeded", "Verdict",
    "algebra_to_setting", "bilinear_form", "check_or_conditions", "classify", "decide_by_tits",
    "find_euclidean_witness", "find_subroot", "finitely_many_orbits", "is_minimal_infinite",
    "parse_algebra", "parse_setting", "quadratic_form", "radical_vector", "recognize_euclidean",
    "reduce_to_radical", "serialize_setting", "tits_form",
]
