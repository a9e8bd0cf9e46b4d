"""
Quantum Gaudin magnets and the algebraic Bethe ansatz
=====================================================

Spins at marked points, a commuting family S(u) = tr L(u)^2 / 2, and
eigenvectors built by applying F(w) = sum F_i / (w - z_i) to the vacuum
at roots w solving the Bethe equations.
"""

import numpy as np

from integrable import gaudin as gd

# Two spin-1/2 sites at 0 and 1: the single Bethe root sits at the midpoint.
mid = gd.GaudinSites([0, 1], [1, 1])
conf = gd.bethe_solve(mid, 1, init=[0.4])
print("root:", conf.roots, "after", conf.iterations, "Newton steps")
chi, s = gd.chi_eigenvalue(mid, conf.roots, 2.0)
print("chi(2) =", chi.real, " s(2) =", s.real, "(3/16 =", 3 / 16, ")")
print("|| S(2)|w> - s(2)|w> || =", gd.eigen_residual(mid, conf.roots, 2.0))

# A bigger magnet: three sites, spins 1/2, 1, 1/2, two roots
sites = gd.GaudinSites([0, 1, 3], [1, 2, 1])
print("[S(u), S(v)] =", gd.commutativity_residual(sites, 0.3 + 0.2j, -1.1))
conf = gd.bethe_solve(sites, 2, init=[0.2, 1.7])
print("roots:", conf.roots.real)
u = -0.7
levels = gd.exact_spectrum(sites, u)
_, s = gd.chi_eigenvalue(sites, conf.roots, u)
print("exact spectrum of S(-0.7):", np.round(levels, 6))
print("Bethe eigenvalue:", round(s.real, 6), " distance:", np.min(np.abs(levels - s.real)))

# Off shell the Bethe vector is not an eigenvector, but the defect is
# exactly the "unwanted terms" proportional to the residuals f_j.
w = [0.3 + 0.4j, 2.0 - 0.1j]
print("off-shell eigen residual:", gd.eigen_residual(sites, w, 1.5 + 1j))
print("after subtracting unwanted terms:", gd.offshell_residual(sites, w, 1.5 + 1j))
