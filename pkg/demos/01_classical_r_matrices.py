"""
Classical r-matrices and the Yang-Baxter equations
==================================================

Three ways an r-matrix shows up: as a splitting operator on gl(n), as the
rational solution t/(u - v), and as the trigonometric one.
"""

import numpy as np

from integrable import rmatrix as rm

# gl(n) splits into upper triangular (with diagonal) plus strictly lower.
# r = P+ - P- then solves the modified classical Yang-Baxter equation,
# exactly, in integer arithmetic.
for n in range(2, 6):
    print(f"gl({n}) splitting: modified CYBE residual = {rm.check_mcybe(rm.Splitting(n))}")

# The r-bracket [X, Y]_r = ([rX, Y] + [X, rY]) / 2 is a second Lie bracket.
print("r-bracket Jacobiator, gl(3):", rm.check_r_bracket_jacobi(rm.Splitting(3)))

# Perturb the operator a little and the equation notices.
s = rm.Splitting(3)
bent = lambda x: rm.splitting_r_apply(s, x) + 1e-3 * (x - np.diag(np.diag(x))).T
print("perturbed splitting, modified CYBE residual:", rm.check_mcybe(s, bent))

# Spectral-parameter solutions of the classical Yang-Baxter equation
rng = np.random.default_rng(1)
u, v, w = rng.normal(size=3) + 1j * rng.normal(size=3)
print("rational r, n=3:", rm.check_cybe_spectral("rational", u, v, w, 3))
x, y, z = np.exp(1j * rng.uniform(0, 2 * np.pi, 3))
print("trigonometric r, n=2:", rm.check_cybe_spectral("trigonometric", x, y, z, 2))

# the trigonometric matrix, and its limits
print("trig_r(-1) is the skew part alone:\n", rm.trig_r(-1.0).real)
print("trig_r(1e8) ~ t + skew part:\n", np.round(rm.trig_r(1e8).real, 6))
