"""Exact arithmetic layer shared by every other module."""

from .linalg import IntegerEchelon, ModPEchelon, nullspace_mod_p, rat_nullspace
from .rings import (
    CycElem,
    Poly,
    PrimeFieldElem,
    Rat,
    cyclotomic_polynomial,
    is_prime,
    rat,
    rat_from_str,
    rat_to_str,
    ring_key,
)
from .series import TruncSeries, series_inv_geometric, series_mul

__all__ = [
    "CycElem",
    "IntegerEchelon",
    "ModPEchelon",
    "Poly",
    "PrimeFieldElem",
    "Rat",
    "TruncSeries",
    "cyclotomic_polynomial",
    "is_prime",
    "nullspace_mod_p",
    "rat",
    "rat_from_str",
    "rat_nullspace",
    "rat_to_str",
    "ring_key",
    "series_inv_geometric",
    "series_mul",
]
