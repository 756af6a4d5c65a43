"""Decide APN-ness in the bivariate family f_{b,c,r} through zeros of P_{c,b}."""

from .errors import CapExceeded, DomainError, ParameterError
from .family import FamilyParams, count_zeros_P, differential_uniformity, eval_f, eval_P
from .field import FieldCtx, get_field
from .subfield import SubfieldView

__all__ = [
    "CapExceeded",
    "DomainError",
    "FamilyParams",
    "FieldCtx",
    "ParameterError",
    "SubfieldView",
    "count_zeros_P",
    "differential_uniformity",
    "eval_P",
    "eval_f",
    "get_field",
]
__version__ = "0.1.0"
