"""Exact quasimap wall-crossing computations for complete intersections in projective space."""

from .cohring import CohClass, CompleteIntersection, chern, euler_char, integrate, tangent_chern
from .errors import (
    ContextError,
    DepthError,
    DomainError,
    IdentityCheckError,
    IntegralityError,
    QmapError,
    SingularError,
    UnresolvedBracketError,
)
from .genus0 import genus0_data, instanton_numbers, j_extraction_check, yukawa
from .gwcalc import Bracket, BracketExpression, InvariantTable, constant_map_value, expand, reduce
from .ifun import Stability, divisor_exponent, i_degree_piece, j0_j1, mirror_map, mu
from .series import QSeries, ZPolyClass
from .wallcross import (
    bcov_identity_check,
    fano_independence_check,
    gw_from_quasimap,
    semipositive_identity_check,
    transform,
)

__all__ = [
    "Bracket", "BracketExpression", "CohClass", "CompleteIntersection", "ContextError", "DepthError",
    "DomainError", "IdentityCheckError", "IntegralityError", "InvariantTable", "QSeries", "QmapError",
    "SingularError", "Stability", "UnresolvedBracketError", "ZPolyClass",
    "bcov_identity_check", "chern", "constant_map_value", "divisor_exponent", "euler_char", "expand",
    "fano_independence_check", "genus0_data", "gw_from_quasimap", "i_degree_piece", "instanton_numbers",
    "integrate", "j0_j1", "j_extraction_check", "mirror_map", "mu", "reduce", "semipositive_identity_check",
    "tangent_chern", "transform", "yukawa",
]
