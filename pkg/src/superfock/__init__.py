"""Exact and numerical verification of the polynomial Fock model of D(2,1; alpha)."""

from .algebra import BASIS, AlgebraElement, StructureConstants, bracket, build_structure_constants
from .fock import (
    FockOperator,
    FockVector,
    bessel,
    bessel_fischer,
    fundamental_symmetry_S,
    gram_matrix,
    inner_S,
    reduce,
    rho,
    to_matrix,
)
from .group import NumericFockVector, OneParamElement, act_A2_expm, act_closed_form, act_word, parse_word
from .report import VerificationReport
from .scalars import AlphaParam, GaussianRational, NaturalAlphaError
from .sl2 import G0Element, GroupElementSL2, cartan_decompose, exp_sl2
from .superpoly import SuperMonomial, SuperPolynomial

__version__ = "0.1.0"

__all__ = [
    "BASIS",
    "AlgebraElement",
    "StructureConstants",
    "bracket",
    "build_structure_constants",
    "FockOperator",
    "FockVector",
    "bessel",
    "bessel_fischer",
    "fundamental_symmetry_S",
    "gram_matrix",
    "inner_S",
    "reduce",
    "rho",
    "to_matrix",
    "NumericFockVector",
    "OneParamElement",
    "act_A2_expm",
    "act_closed_form",
    "act_word",
    "parse_word",
    "VerificationReport",
    "AlphaParam",
    "GaussianRational",
    "NaturalAlphaError",
    "G0Element",
    "GroupElementSL2",
    "cartan_decompose",
    "exp_sl2",
    "SuperMonomial",
    "SuperPolynomial",
]
