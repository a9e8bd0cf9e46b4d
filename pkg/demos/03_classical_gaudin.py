"""
Classical Gaudin model
======================

Residues A_i at marked points z_i, Lax matrix L(u) = sum A_i / (u - z_i),
and the Lie-Poisson bracket on the residues.  The linear r-matrix bracket
holds, and the spectral invariants of L(u) Poisson-commute.
"""

import numpy as np

from integrable import gaudin as gd

rng = np.random.default_rng(3)
sites = gd.GaudinSites([0.0, 1.0, 2.5], [1, 1, 1])
pt = gd.ClassicalPoint.random(3, rng)

u, v = 0.4 + 0.7j, -1.3 + 0.2j
print("linear bracket residual:", gd.classical_pbr_residual(sites, pt, u, v))
print("{H(u), H(v)}:", gd.classical_involution_residual(sites, pt, u, v))

det, s1, s2 = gd.classical_invariants(sites, pt, u)
print("char. polynomial of L(u): lambda^2 +", s1, "lambda +", det)
print("H(u) = tr L(u)^2 / 2 =", gd.classical_hamiltonian(sites, pt, u))
