"""Explicit average Selmer-rank bounds over Galois extensions.

The package evaluates the constant C_p(K/F) and the bound composers built on
it, and checks their desk-verifiable ingredients (curve counts, reduction
densities, local norm indices, lattice fixed spaces) by exact computation.
"""

__version__ = "0.1.0"
