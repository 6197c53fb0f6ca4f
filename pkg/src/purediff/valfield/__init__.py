"""Concrete valued fields and their simple extensions."""
from .extension import (
    ExtensionField,
    Model,
    build_extension,
    build_model,
    eval_val,
    is_irreducible,
    residue_minpoly,
    separable,
)
from .fields import LaurentSeriesField, RationalPadic, Series, field_from_json, vp_int
from .poly import Poly, PolyRing, det, det_field
from .residue import FpPoly, RatFunc, ResidueField

__all__ = [
    "ExtensionField",
    "Model",
    "FpPoly",
    "LaurentSeriesField",
    "Poly",
    "PolyRing",
    "RatFunc",
    "RationalPadic",
    "ResidueField",
    "Series",
    "build_extension",
    "build_model",
    "det",
    "det_field",
    "eval_val",
    "field_from_json",
    "is_irreducible",
    "residue_minpoly",
    "separable",
    "vp_int",
]
