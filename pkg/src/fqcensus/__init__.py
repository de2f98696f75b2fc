"""Exact counting of reachable pairs, unimodular pencils and simple maps over F_q."""

from .errors import BudgetExceeded, VerificationError
from .gf_core import FieldCtx, FieldElement, field_of_order, make_field

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "FieldCtx",
    "FieldElement",
    "VerificationError",
    "field_of_order",
    "make_field",
]
