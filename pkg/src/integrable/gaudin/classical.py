"""Classical sl2 Gaudin model on the Lie-Poisson space of N traceless 2x2 residues.

Coordinates are the entries ``(A_i)_ab``; the bracket is

    {(A_i)_ab, (A_j)_cd} = delta_ij (delta_cb (A_i)_ad - delta_ad (A_i)_cb).
"""

from dataclasses import dataclass

import numpy as np

from ..rmatrix import tensor_casimir

__all__ = [
    "ClassicalPoint",
    "classical_lax",
    "lie_poisson_tensor",
    "classical_pbr_residual",
    "classical_invariants",
    "classical_hamiltonian",
    "classical_involution_residual",
]


@dataclass(frozen=True)
class ClassicalPoint:
    residues: tuple

    def __init__(self, residues):
        res = tuple(np.asarray(a, dtype=complex) for a in residues)
        for a in res:
            if a.shape != (2, 2):
                raise ValueError("residues must be 2x2 matrices")
            if abs(np.trace(a)) > 1e-14 * max(1.0, np.linalg.norm(a)):
                raise ValueError("residues must be traceless")
        object.__setattr__(self, "residues", res)

    @classmethod
    def random(cls, N, rng):
        out = []
        for _ in range(N):
            a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            a[1, 1] = -a[0, 0]
            out.append(a)
        return cls(out)


def classical_lax(sites, pt, u):
    """``L(u) = sum_i A_i / (u - z_i)``."""
    sites.check_off_poles(u)
    return sum(a / (u - z) for a, z in zip(pt.residues, sites.z))


def lie_poisson_tensor(a):
    """Bracket ``{A_ab, A_cd}`` of one gl(2) copy as an array indexed ``[a, b, c, d]``."""
    d = np.eye(2)
    return np.einsum("cb,ad->abcd", d, a) - np.einsum("ad,cb->abcd", d, a)


def classical_pbr_residual(sites, pt, u, v):
    """Max entry deviation between ``{L(u) (x), L(v)}`` and ``[r(u,v), L(u) (x) 1 + 1 (x) L(v)]``."""
    if u == v:
        raise ZeroDivisionError("u and v must differ")
    sites.check_off_poles(u, v)
    lhs = np.zeros((2, 2, 2, 2), dtype=complex)
    for a, z in zip(pt.residues, sites.z):
        lhs += lie_poisson_tensor(a) / ((u - z) * (v - z))
    # [(a,c),(b,d)] layout of the tensor product X (x) Y
    lhs = lhs.transpose(0, 2, 1, 3).reshape(4, 4)
    r = tensor_casimir(2, gl=True) / (u - v)
    I = np.eye(2)
    X = np.kron(classical_lax(sites, pt, u), I) + np.kron(I, classical_lax(sites, pt, v))
    rhs = r @ X - X @ r
    return float(np.max(np.abs(lhs - rhs)))


def classical_invariants(sites, pt, u):
    """Coefficients ``(sigma_0, sigma_1, sigma_2)`` of ``det(L(u) - lambda)``."""
    L = classical_lax(sites, pt, u)
    return np.linalg.det(L), -np.trace(L), 1.0


def classical_hamiltonian(sites, pt, u):
    L = classical_lax(sites, pt, u)
    return 0.5 * np.trace(L @ L)


def classical_involution_residual(sites, pt, u, v):
    """``|{H(u), H(v)}|`` with ``H(u) = tr L(u)^2 / 2``, from analytic gradients."""
    if u == v:
        raise ZeroDivisionError("u and v must differ")
    Lu = classical_lax(sites, pt, u)
    Lv = classical_lax(sites, pt, v)
    total = 0.0
    for a, z in zip(pt.residues, sites.z):
        gu = Lu.T / (u - z)
        gv = Lv.T / (v - z)
        total += np.einsum("ab,abcd,cd->", gu, lie_poisson_tensor(a), gv)
    return float(abs(total))
