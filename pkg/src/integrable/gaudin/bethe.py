"""Algebraic Bethe Ansatz for the sl2 Gaudin model.

Bethe vectors are built by applying the commuting creation operators
``F(w_j)`` to the vacuum.  The residuals

    f_j = sum_i lam_i / (w_j - z_i) - sum_{s != j} 2 / (w_j - w_s)

vanish exactly when the Bethe vector is an eigenvector of ``S(u)``, with
eigenvalue ``s_m(u) = (c/2) chi(u)^2 - c chi'(u)`` and ``c = 1/2``.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .quantum import creation_op, gaudin_generating, vacuum
from .sites import PoleCollisionError

__all__ = [
    "C_V",
    "BetheConfig",
    "BetheSolveError",
    "bethe_vector",
    "bethe_residuals",
    "bethe_jacobian",
    "bethe_solve",
    "chi_eigenvalue",
    "eigen_residual",
    "offshell_residual",
    "generalized_bethe_residual",
    "generalized_bethe_jacobian",
    "generalized_bethe_solve",
]

# Normalization of the eigenvalue formula for the C^2 auxiliary space with the
# trace-form Casimir; fixed by matching S(u) on the vacuum of a single site.
C_V = 0.5

MIN_SEPARATION = 1e-8


class BetheSolveError(RuntimeError):
    def __init__(self, message, roots=None, iterations=None, residual=None):
        super().__init__(message)
        self.roots = roots
        self.iterations = iterations
        self.residual = residual


@dataclass
class BetheConfig:
    roots: np.ndarray
    residuals: np.ndarray
    iterations: int = 0
    history: list = field(default_factory=list)

    @property
    def max_residual(self):
        return float(np.max(np.abs(self.residuals))) if len(self.residuals) else 0.0


def _as_roots(roots):
    return np.atleast_1d(np.asarray(roots, dtype=complex))


def _check_roots(sites, w):
    for j, wj in enumerate(w):
        sites.check_off_poles(wj)
        for s in range(j):
            if w[s] == wj:
                raise PoleCollisionError(f"Bethe roots {s} and {j} coincide")


def bethe_vector(sites, roots):
    """``F(w_1) ... F(w_m) |0>``.  A zero result (too many roots) triggers a warning."""
    w = _as_roots(roots)
    vec = vacuum(sites)
    for wj in w:
        vec = creation_op(sites, wj) @ vec
    if len(w) and not np.any(vec):
        warnings.warn("Bethe vector vanishes identically", RuntimeWarning, stacklevel=2)
    return vec


def generalized_bethe_residual(weight_products, root_products, assignment, z, roots):
    """Residuals of the Bethe equations for a general simple Lie algebra.

    Parameters
    ----------
    weight_products : array (N, r)
        ``(lam_i, alpha_a)`` for each marked point ``i`` and simple root ``a``.
    root_products : array (r, r)
        Symmetric matrix of ``(alpha_a, alpha_b)``.
    assignment : sequence of int
        Simple-root index carried by each Bethe root.
    z : sequence of complex
        Marked points.
    roots : sequence of complex
        Bethe roots ``w_j``.
    """
    wp = np.asarray(weight_products, dtype=float)
    rp = np.asarray(root_products, dtype=float)
    if not np.allclose(rp, rp.T):
        raise ValueError("root inner-product table must be symmetric")
    z = np.asarray(z, dtype=complex)
    w = _as_roots(roots)
    a = np.asarray(assignment, dtype=int)
    if a.shape != w.shape:
        raise ValueError("one simple-root label per Bethe root")
    f = np.zeros(len(w), dtype=complex)
    for j in range(len(w)):
        dz = w[j] - z
        dw = w[j] - w
        if np.any(dz == 0) or np.count_nonzero(dw == 0) > 1:
            raise PoleCollisionError(f"Bethe root {j} collides with a marked point or another root")
        f[j] = np.sum(wp[:, a[j]] / dz)
        for s in range(len(w)):
            if s != j:
                f[j] -= rp[a[s], a[j]] / dw[s]
    return f


def generalized_bethe_jacobian(weight_products, root_products, assignment, z, roots):
    wp = np.asarray(weight_products, dtype=float)
    rp = np.asarray(root_products, dtype=float)
    z = np.asarray(z, dtype=complex)
    w = _as_roots(roots)
    a = np.asarray(assignment, dtype=int)
    m = len(w)
    J = np.zeros((m, m), dtype=complex)
    for j in range(m):
        J[j, j] = -np.sum(wp[:, a[j]] / (w[j] - z) ** 2)
        for s in range(m):
            if s != j:
                g = rp[a[s], a[j]] / (w[j] - w[s]) ** 2
                J[j, j] += g
                J[j, s] = -g
    return J


def _sl2_tables(sites):
    return np.asarray(sites.lam, dtype=float)[:, None], np.array([[2.0]])


def bethe_residuals(sites, roots):
    w = _as_roots(roots)
    _check_roots(sites, w)
    wp, rp = _sl2_tables(sites)
    return generalized_bethe_residual(wp, rp, np.zeros(len(w), dtype=int), sites.z, w)


def bethe_jacobian(sites, roots):
    """``d f_j / d w_k``; the residuals are holomorphic in the roots."""
    w = _as_roots(roots)
    wp, rp = _sl2_tables(sites)
    return generalized_bethe_jacobian(wp, rp, np.zeros(len(w), dtype=int), sites.z, w)


def _min_separation(z, w):
    pts = np.concatenate([np.asarray(z, dtype=complex), w])
    best = np.inf
    for j in range(len(w)):
        d = np.abs(pts - w[j])
        d[len(z) + j] = np.inf
        best = min(best, float(d.min()))
    return best


def _newton(residual, jacobian, z, init, tol, max_iter, escape=1e8):
    w = _as_roots(init).copy()
    history = []
    f = residual(w)
    for it in range(max_iter + 1):
        err = float(np.max(np.abs(f))) if len(f) else 0.0
        history.append(err)
        if err <= tol:
            return w, f, it, history
        if it == max_iter:
            break
        J = jacobian(w)
        cond = np.linalg.cond(J)
        if not np.isfinite(cond) or cond > 1e14:
            raise BetheSolveError(f"singular Jacobian (condition estimate {cond:.3e})", w, it, err)
        step = np.linalg.solve(J, f)
        alpha = 1.0
        while True:
            trial = w - alpha * step
            if _min_separation(z, trial) >= MIN_SEPARATION:
                break
            alpha *= 0.5
            if alpha < 1e-12:
                raise BetheSolveError("step damping failed to avoid a collision", w, it, err)
        w = trial
        if np.max(np.abs(w)) > escape:
            raise BetheSolveError("roots ran away to infinity", w, it + 1, err)
        f = residual(w)
    raise BetheSolveError(f"no convergence after {max_iter} iterations", w, max_iter, history[-1])


def _canonical_order(w):
    return np.array(sorted(w, key=lambda x: (x.real, x.imag)), dtype=complex)


def bethe_solve(sites, m, init, tol=1e-12, max_iter=50):
    """Newton iteration on the sl2 Bethe equations.

    Raises :class:`BetheSolveError` on non-convergence, runaway roots, or a
    singular Jacobian.  Roots come back sorted lexicographically by
    ``(real, imag)``.
    """
    w0 = _as_roots(init)
    if len(w0) != m:
        raise ValueError(f"expected {m} initial roots, got {len(w0)}")
    if m and _min_separation(sites.z, w0) < 1e-6:
        raise ValueError("initial roots must be separated from each other and from the marked points")
    w, f, it, hist = _newton(
        lambda x: bethe_residuals(sites, x),
        lambda x: bethe_jacobian(sites, x),
        sites.z, w0, tol, max_iter,
    )
    w = _canonical_order(w)
    return BetheConfig(w, bethe_residuals(sites, w), it, hist)


def generalized_bethe_solve(weight_products, root_products, assignment, z, init, tol=1e-12, max_iter=50):
    res = lambda x: generalized_bethe_residual(weight_products, root_products, assignment, z, x)
    jac = lambda x: generalized_bethe_jacobian(weight_products, root_products, assignment, z, x)
    w, f, it, hist = _newton(res, jac, z, init, tol, max_iter)
    return BetheConfig(w, f, it, hist)


def chi_eigenvalue(sites, roots, u):
    """Return ``(chi_m(u), s_m(u))``."""
    w = _as_roots(roots)
    sites.check_off_poles(u)
    if np.any(w == u):
        raise PoleCollisionError("u coincides with a Bethe root")
    z = np.asarray(sites.z)
    lam = np.asarray(sites.lam, dtype=float)
    chi = np.sum(lam / (u - z)) - np.sum(2.0 / (u - w))
    dchi = -np.sum(lam / (u - z) ** 2) + np.sum(2.0 / (u - w) ** 2)
    s = 0.5 * C_V * chi**2 - C_V * dchi
    return complex(chi), complex(s)


def eigen_residual(sites, roots, u):
    """``||S(u) |w> - s_m(u) |w>|| / |||w>||``."""
    vec = bethe_vector(sites, roots)
    norm = np.linalg.norm(vec)
    if norm == 0:
        raise ValueError("Bethe vector is zero")
    _, s = chi_eigenvalue(sites, roots, u)
    S = gaudin_generating(sites, u)
    return float(np.linalg.norm(S @ vec - s * vec) / norm)


def offshell_residual(sites, roots, u):
    """Norm of ``S(u)|w> - s_m(u)|w> - sum_j f_j/(u - w_j) |w; w_j -> u>``."""
    w = _as_roots(roots)
    vec = bethe_vector(sites, w)
    _, s = chi_eigenvalue(sites, w, u)
    f = bethe_residuals(sites, w)
    S = gaudin_generating(sites, u)
    out = S @ vec - s * vec
    for j in range(len(w)):
        swapped = w.copy()
        swapped[j] = u
        out -= f[j] / (u - w[j]) * bethe_vector(sites, swapped)
    return float(np.linalg.norm(out))
