"""
Trigonometric R-matrix, transfer matrices, quantum determinant
==============================================================

Build the monodromy of an inhomogeneous spin-1/2 chain out of R-matrices,
check that twisted transfer matrices commute, and find the quantum
determinant among the candidate shift/ordering conventions.
"""

import numpy as np

from integrable import lattice as lq

q = np.exp(0.6j)
print("R(1) = P:\n", lq.r_q(1.0, q).real)
print("Yang-Baxter residual:", lq.qybe_residual(q, 0.7 + 0.3j, 1.4 - 0.2j))

chain = lq.Chain(4, zeta=[1.0, 0.8j, 1.3, -0.9], twist=[1.2, 0.7j])
z, w = 0.5 + 0.5j, 1.6 - 0.4j
print("[t(z), t(w)] =", lq.transfer_commutativity_residual(chain, q, z, w))

qd = lq.qdet(chain, q, z)
print(f"quantum determinant: shift {qd.shift_label}, coefficient {qd.coefficient_label}")
print("  value", qd.value, " distance from a scalar", qd.deviation)
for shift, coef, dev in qd.candidates:
    print(f"  tried shift={shift:5s} coef={coef:4s} relative deviation {dev:.2e}")

# Near q = 1 the R-matrix is I + (q - 1) r + ..., and r is the classical
# trigonometric r-matrix up to sign and a multiple of the identity.
sign, c, res = lq.semiclassical_fit(0.4 + 0.9j)
print("semiclassical: sign", sign, " identity coefficient", c, " residual", res)
