"""Exact integer and modular arithmetic used throughout the package."""

from .integers import (
    factorize,
    iroot,
    is_prime,
    is_squarefree,
    kronecker,
    squarefree_part,
    valuation,
)
from .polymod import factor_degrees, is_separable, poly_factor_mod
from .primes import prime_iter, primes_upto

__all__ = [
    "factor_degrees",
    "factorize",
    "iroot",
    "is_prime",
    "is_separable",
    "is_squarefree",
    "kronecker",
    "poly_factor_mod",
    "prime_iter",
    "primes_upto",
    "squarefree_part",
    "valuation",
]
