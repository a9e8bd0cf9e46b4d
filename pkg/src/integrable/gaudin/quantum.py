"""Quantum sl2 Gaudin model on a tensor product of irreducible modules.

Operators act on ``V_{lam_1} (x) ... (x) V_{lam_N}``.  Wherever an auxiliary
C^2 leg appears it is the leading tensor factor.  The coupling of two sl2
legs is ``Omega = E (x) F + F (x) E + H (x) H / 2``.
"""

from functools import lru_cache
from types import MappingProxyType

import numpy as np

from ..linalg import (
    NotHermitianError,
    commutator,
    embed_at_site,
    embed_two_sites,
    hermitian_eigs,
    partial_trace_first,
    sl2_irrep,
)
from ..rmatrix import tensor_casimir

__all__ = [
    "omega",
    "quantum_lax",
    "gaudin_generating",
    "gaudin_hamiltonians",
    "commutativity_residual",
    "comm_identity_residual",
    "vacuum",
    "site_operator",
    "total_weight",
    "creation_op",
    "exact_spectrum",
]


def omega(rep_a, rep_b):
    """Two-leg Casimir coupling ``E (x) F + F (x) E + H (x) H / 2``."""
    return (
        np.kron(rep_a.E, rep_b.F)
        + np.kron(rep_a.F, rep_b.E)
        + 0.5 * np.kron(rep_a.H, rep_b.H)
    ).astype(float)


@lru_cache(maxsize=64)
def _aux_couplings(lam, n_aux, hermitian):
    # Omega between each auxiliary leg and each site, on (C^2)^{n_aux} (x) sites
    fund = sl2_irrep(1, hermitian=hermitian)
    reps = [sl2_irrep(l, hermitian=hermitian) for l in lam]
    dims = [2] * n_aux + [l + 1 for l in lam]
    out = []
    for a in range(n_aux):
        row = []
        for i, rep in enumerate(reps):
            op = embed_two_sites(omega(fund, rep), a, n_aux + i, dims)
            op.setflags(write=False)
            row.append(op)
        out.append(tuple(row))
    return tuple(out)


@lru_cache(maxsize=64)
def _site_couplings(lam, hermitian):
    reps = [sl2_irrep(l, hermitian=hermitian) for l in lam]
    dims = [l + 1 for l in lam]
    ops = {}
    for i in range(len(lam)):
        for j in range(i + 1, len(lam)):
            op = embed_two_sites(omega(reps[i], reps[j]), i, j, dims)
            op.setflags(write=False)
            ops[i, j] = op
    return MappingProxyType(ops)


def quantum_lax(sites, u, hermitian=False):
    """``L(u) = sum_i Omega^{(0,i)} / (u - z_i)`` on C^2 (x) sites."""
    sites.check_off_poles(u)
    ops = _aux_couplings(sites.lam, 1, hermitian)[0]
    return sum(op / (u - z) for op, z in zip(ops, sites.z))


def gaudin_generating(sites, u, hermitian=False):
    """``S(u) = tr_aux L(u)^2 / 2``."""
    L = quantum_lax(sites, u, hermitian=hermitian)
    return 0.5 * partial_trace_first(L @ L, 2)


def gaudin_hamiltonians(sites, hermitian=False):
    """Residues ``H_i = sum_{j != i} Omega^{(ij)} / (z_i - z_j)`` of ``S(u)``."""
    if sites.N < 2:
        raise ValueError("need at least two sites")
    ops = _site_couplings(sites.lam, hermitian)
    z = sites.z
    dim = sites.dim
    H = [np.zeros((dim, dim), dtype=complex) for _ in range(sites.N)]
    for (i, j), op in ops.items():
        H[i] += op / (z[i] - z[j])
        H[j] += op / (z[j] - z[i])
    return H


def commutativity_residual(sites, u, v, hermitian=False):
    if u == v:
        raise ZeroDivisionError("u and v must differ")
    return float(np.linalg.norm(commutator(gaudin_generating(sites, u, hermitian),
                                           gaudin_generating(sites, v, hermitian))))


def comm_identity_residual(sites, u, v):
    """Residual of ``[L_1(u), L_2(v)] = [r_12(v, u), L_1(u) + L_2(v)]``.

    Both sides live on C^2 (x) C^2 (x) sites; ``r(v, u) = t / (v - u)`` with the
    sl2 tensor Casimir ``t = P - I/2`` of the fundamental representation.
    The matrix entries of ``L`` built from ``Omega`` are ``L_ab ~ X_ba``, whose
    commutators carry the opposite sign to the Lie-Poisson convention of the
    classical check; that is why ``r`` enters with swapped arguments here.
    """
    if u == v:
        raise ZeroDivisionError("u and v must differ")
    sites.check_off_poles(u, v)
    ops = _aux_couplings(sites.lam, 2, False)
    L1 = sum(op / (u - z) for op, z in zip(ops[0], sites.z))
    L2 = sum(op / (v - z) for op, z in zip(ops[1], sites.z))
    r = embed_two_sites(tensor_casimir(2) / (v - u), 0, 1, [2, 2, sites.dim])
    lhs = commutator(L1, L2)
    rhs = commutator(r, L1 + L2)
    return float(np.linalg.norm(lhs - rhs))


def vacuum(sites):
    """Tensor product of highest-weight vectors (unit norm)."""
    v = np.zeros(sites.dim, dtype=complex)
    v[0] = 1.0
    return v


def site_operator(sites, name, i, hermitian=False):
    """``X^{(i)}`` for ``X`` in ``{"E", "F", "H"}``."""
    rep = sl2_irrep(sites.lam[i], hermitian=hermitian)
    return embed_at_site(getattr(rep, name), i, sites.dims)


def total_weight(sites):
    return sum(site_operator(sites, "H", i) for i in range(sites.N))


def creation_op(sites, w):
    """``F(w) = sum_i F^{(i)} / (w - z_i)``."""
    sites.check_off_poles(w)
    return sum(site_operator(sites, "F", i) / (w - z) for i, z in enumerate(sites.z))


def exact_spectrum(sites, u):
    """Ascending eigenvalues of ``S(u)`` for real data, by Jacobi diagonalization.

    Uses the symmetric (Hermitian) normalization of the sl2 modules; a
    non-Hermitian ``S(u)`` indicates a convention error and raises.
    """
    if not sites.is_real() or complex(u).imag != 0:
        raise ValueError("exact_spectrum needs real marked points and real u")
    S = gaudin_generating(sites, complex(u).real, hermitian=True)
    if np.linalg.norm(S - S.conj().T) > 1e-12 * max(1.0, np.linalg.norm(S)):
        raise NotHermitianError("S(u) is not Hermitian in the symmetric basis")
    w, _ = hermitian_eigs(S)
    return w
