"""Exact computations with twisted modules over the Witt algebra and sl(n+1).

Polynomial modules live on Q[d1..dn] with :class:`fractions.Fraction`
coefficients; every identity is checked by exact equality.
"""

from .exact import DimensionError, pairing, parse_cvec, parse_scalar, row_reduce
from .modules import (
    OmegaModule,
    TruncationOverflow,
    WeightModule,
    WeightVec,
    act,
    delta_check,
    module_axiom_holds,
)
from .poly import Poly, TruncationError, format_poly, parse_poly
from .structure import (
    ObstructionError,
    StabilizationError,
    extract_params,
    irreducible_witness,
    isomorphic,
    lowest_weight_check,
    member_w,
    quotient_dim,
    reduce_degree,
    sl_closure,
    w_basis,
    y_product,
)
from .witt import D, WittElement, bracket, format_witt, parse_witt, sigma_b, sl_embed, t

__version__ = "0.1.0"

__all__ = [
    "D",
    "DimensionError",
    "ObstructionError",
    "OmegaModule",
    "Poly",
    "StabilizationError",
    "TruncationError",
    "TruncationOverflow",
    "WeightModule",
    "WeightVec",
    "WittElement",
    "act",
    "bracket",
    "delta_check",
    "extract_params",
    "format_poly",
    "format_witt",
    "irreducible_witness",
    "isomorphic",
    "lowest_weight_check",
    "member_w",
    "module_axiom_holds",
    "pairing",
    "parse_cvec",
    "parse_poly",
    "parse_scalar",
    "parse_witt",
    "quotient_dim",
    "reduce_degree",
    "row_reduce",
    "sigma_b",
    "sl_closure",
    "sl_embed",
    "t",
    "w_basis",
    "y_product",
]
