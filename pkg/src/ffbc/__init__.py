"""Exact workbench for the Bost-Connes analogue over F_q(T) built on the Carlitz module."""
from .errors import (AdmissibilityRequired, DegenerateInput, DivergentSeries, FFBCError, LevelMismatch,
                     NotCoprime, NotInFChi, ParseError, UnsafeTruncation)
from .ffpoly import GlobalConfig

__version__ = "0.1.0"

__all__ = [
    "GlobalConfig", "FFBCError", "DegenerateInput", "DivergentSeries", "NotCoprime", "LevelMismatch",
    "NotInFChi", "AdmissibilityRequired", "UnsafeTruncation", "ParseError",
]
