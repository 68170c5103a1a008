"""Level-1 Heun operator oracle over finite fields."""

from . import upoly
from .gf import GF, FieldElement
from .heun import (
    ALL_SIGNS,
    HeunParams,
    OperInvariant,
    companion_connection,
    count_dormant_opers,
    count_dormant_opers_detail,
    dormancy_polynomial,
    heun_equiv,
    heun_radii,
    is_dormant_heun,
    max_count_over_t,
    oper_invariant,
    params_from_radii,
    scan_dormant_q,
)
from .pcurv import CoeffRing, PolyMatrix, pcurvature

__all__ = [
    "ALL_SIGNS", "CoeffRing", "FieldElement", "GF", "HeunParams", "OperInvariant", "PolyMatrix",
    "companion_connection", "count_dormant_opers", "count_dormant_opers_detail", "dormancy_polynomial",
    "heun_equiv", "heun_radii", "is_dormant_heun", "max_count_over_t", "oper_invariant",
    "params_from_radii", "pcurvature", "scan_dormant_q", "upoly",
]
