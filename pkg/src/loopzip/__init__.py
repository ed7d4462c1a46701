"""Exact loop-group double-coset arithmetic over small finite fields."""

__version__ = "0.1.0"

from .errors import (
    BudgetExceeded,
    ConventionError,
    DivisionByZero,
    InsufficientPrecision,
    LoopZipError,
    NotAUnit,
    NotInParabolic,
    NotIntegral,
    NotInvertible,
    NotMinimalRep,
    SpecMismatch,
    WrongCell,
)
from .gf import FieldSpec, FqElem
from .grpdata import Cocharacter, SubgroupTag
from .matring import Mat, snf_dvr
from .series import LaurentElt
from .witt import WittCtx, WittElt, WittFraction

__all__ = [
    "BudgetExceeded",
    "Cocharacter",
    "ConventionError",
    "DivisionByZero",
    "FieldSpec",
    "FqElem",
    "InsufficientPrecision",
    "LaurentElt",
    "LoopZipError",
    "Mat",
    "NotAUnit",
    "NotInParabolic",
    "NotIntegral",
    "NotInvertible",
    "NotMinimalRep",
    "SpecMismatch",
    "SubgroupTag",
    "WittCtx",
    "WittElt",
    "WittFraction",
    "WrongCell",
    "snf_dvr",
]
