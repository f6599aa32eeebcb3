"""Exact-arithmetic classification of mod-p and adic Galois images of
non-CM elliptic curves over Q, with the accompanying modular-curve pair
census and Serre-constant computations."""

from .ecq import EllipticCurveQ
from .galimage import (mod_p_image, serre_constant, exceptional_primes,
                       exceptional_type, adic_level_2, adic_level_3)
from .catalog import load as load_catalog

__version__ = "1.0.0"

__all__ = [
    "EllipticCurveQ", "mod_p_image", "serre_constant", "exceptional_primes",
    "exceptional_type", "adic_level_2", "adic_level_3", "load_catalog",
    "__version__",
]
