"""Parametric plant grammar DSL: parsing, derivation, turtle interpretation."""

from .curves import FunctionCurve, constant_curve, curve_from_pairs
from .derive import DeriveError, derive
from .expr import EvalError, LsysError
from .parser import ParseError, parse_lsystem
from .program import (LSystemProgram, Module, Production, TURTLE_SYMBOLS,
                      format_modules, format_program)
from .turtle import (ORGAN_BRANCH, ORGAN_COTYLEDON, ORGAN_LEAF, ORGAN_STEM,
                     Placement, StemPath, TurtleConfig, TurtleError, interpret)

__all__ = [
    "FunctionCurve", "constant_curve", "curve_from_pairs",
    "DeriveError", "derive", "EvalError", "LsysError",
    "ParseError", "parse_lsystem",
    "LSystemProgram", "Module", "Production", "TURTLE_SYMBOLS",
    "format_modules", "format_program",
    "ORGAN_BRANCH", "ORGAN_COTYLEDON", "ORGAN_LEAF", "ORGAN_STEM",
    "Placement", "StemPath", "TurtleConfig", "TurtleError", "interpret",
]
