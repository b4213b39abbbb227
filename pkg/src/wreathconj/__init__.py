"""Conjugacy in wreath products of finitely generated abelian groups.

Exact-arithmetic decision procedures, finite quotients witnessing
non-conjugacy with explicit size bounds, and depth values measured
against streams of finite quotients.
"""

__version__ = "0.1.0"

from .abelian import AbelianElement, AbelianGroup, GroupMismatchError, QuotientMap
from .depth import (
    DepthResult,
    FamilyPair,
    depth_sweep,
    family_lamplighter,
    family_zwrz,
    split_conjugacy_depth,
)
from .laurent import LaurentPoly, SemidirectElement, parse_ring, same_conjugacy_class
from .witness import WitnessContractError, WitnessQuotient, full_witness
from .wreath import WreathElement, WreathGroup, conjugate_test

__all__ = [
    "AbelianElement",
    "AbelianGroup",
    "DepthResult",
    "FamilyPair",
    "GroupMismatchError",
    "LaurentPoly",
    "QuotientMap",
    "SemidirectElement",
    "WitnessContractError",
    "WitnessQuotient",
    "WreathElement",
    "WreathGroup",
    "conjugate_test",
    "depth_sweep",
    "family_lamplighter",
    "family_zwrz",
    "full_witness",
    "parse_ring",
    "same_conjugacy_class",
    "split_conjugacy_depth",
]
