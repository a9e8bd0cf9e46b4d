"""Classical and quantum integrable systems on dense numpy matrices.

Submodules:

- ``linalg``: tensor plumbing, sl2 irreps, QR and a Jacobi Hermitian eigensolver
- ``rmatrix``: classical r-matrices and Yang-Baxter residuals
- ``toda``: open and periodic Toda lattices, Lax form, factorization solution
- ``gaudin``: classical and quantum Gaudin models, algebraic Bethe ansatz
- ``lattice``: trigonometric quantum R-matrix, monodromy, transfer matrices
- ``cli``: batch check suites (``python -m integrable``)
"""

from . import gaudin, lattice, linalg, rmatrix, toda
from .rng import SplitMix64

__version__ = "0.1.0"

__all__ = ["gaudin", "lattice", "linalg", "rmatrix", "toda", "SplitMix64"]
