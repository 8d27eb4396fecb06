"""Exact wall-and-chamber computations for tilt and Bridgeland stability
on Picard-rank-1 Fano threefolds."""

__version__ = "0.1.0"

from .varieties import (ChernCharacter, FanoVariety, P3, Q3, REGISTRY, V5, V22,
                        dual, euler_pairing, get_variety, line_bundle, mu_slope,
                        spinor_character, structure_sheaf, tensor_line, twist)
from .stability import (Side, StabilityPoint, WallPolynomial, bogomolov_Q,
                        bridgeland_Z, curve_values, lambda_slope, nu, tilt_Z,
                        wall_poly, wall_side)
from .exceptional import (DimensionVector, ExceptionalCollection, ExceptionalObject,
                          apply_word, canonical_collection, ch_from_dim,
                          dimension_vector, ext_shift, left_mutation, right_mutation)

__all__ = [
    "ChernCharacter", "FanoVariety", "P3", "Q3", "V5", "V22", "REGISTRY",
    "dual", "euler_pairing", "get_variety", "line_bundle", "mu_slope",
    "spinor_character", "structure_sheaf", "tensor_line", "twist",
    "Side", "StabilityPoint", "WallPolynomial", "bogomolov_Q", "bridgeland_Z",
    "curve_values", "lambda_slope", "nu", "tilt_Z", "wall_poly", "wall_side",
    "DimensionVector", "ExceptionalCollection", "ExceptionalObject",
    "apply_word", "canonical_collection", "ch_from_dim", "dimension_vector",
    "ext_shift", "left_mutation", "right_mutation",
]
