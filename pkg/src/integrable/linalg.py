"""Dense linear algebra used throughout the package.

Matrices are plain ``numpy`` arrays.  Everything here is a pure function of
its inputs.
"""

from dataclasses import dataclass
from functools import reduce

import numpy as np

__all__ = [
    "Irrep",
    "kron",
    "embed_at_site",
    "embed_two_sites",
    "partial_trace_first",
    "sl2_irrep",
    "casimir",
    "commutator",
    "qr_decompose",
    "hermitian_eigs",
    "sym_exp",
    "SingularMatrixError",
    "NotHermitianError",
]


class SingularMatrixError(np.linalg.LinAlgError):
    pass


class NotHermitianError(ValueError):
    pass


@dataclass(frozen=True)
class Irrep:
    """Highest-weight sl2 module of dimension ``lam + 1``.

    ``E``, ``F``, ``H`` act on the basis ``v_0 .. v_lam`` where ``v_0`` is the
    highest-weight vector.
    """

    lam: int
    E: np.ndarray
    F: np.ndarray
    H: np.ndarray

    @property
    def dim(self):
        return self.lam + 1


def kron(*ops):
    """Kronecker product of one or more matrices, left to right."""
    return reduce(np.kron, ops)


def embed_at_site(x, site, dims):
    """Return ``I (x) ... (x) x (x) ... (x) I`` with ``x`` on tensor leg ``site``."""
    x = np.asarray(x)
    dims = list(dims)
    if not 0 <= site < len(dims):
        raise IndexError(f"site {site} out of range for {len(dims)} legs")
    if x.shape != (dims[site], dims[site]):
        raise ValueError(f"operator of shape {x.shape} does not fit leg of dimension {dims[site]}")
    left = int(np.prod(dims[:site], dtype=np.int64))
    right = int(np.prod(dims[site + 1:], dtype=np.int64))
    out = np.kron(np.eye(left, dtype=x.dtype), x)
    return np.kron(out, np.eye(right, dtype=x.dtype))


def embed_two_sites(x, i, j, dims):
    """Place a two-leg operator ``x`` (acting on ``dims[i] (x) dims[j]``) on legs ``i``, ``j``.

    The first tensor factor of ``x`` goes to leg ``i``, the second to leg ``j``;
    ``i > j`` is allowed and swaps the roles accordingly.
    """
    x = np.asarray(x)
    dims = list(dims)
    n = len(dims)
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"bad leg pair ({i}, {j}) for {n} legs")
    di, dj = dims[i], dims[j]
    if x.shape != (di * dj, di * dj):
        raise ValueError(f"operator of shape {x.shape} does not fit legs of dimension {di}, {dj}")
    rest = [k for k in range(n) if k not in (i, j)]
    drest = int(np.prod([dims[k] for k in rest], dtype=np.int64))
    full = np.kron(x, np.eye(drest, dtype=x.dtype))
    # current leg order is (i, j, *rest); permute back to 0..n-1
    order = [i, j] + rest
    shape = [dims[k] for k in order]
    full = full.reshape(shape + shape)
    inv = list(np.argsort(order))
    full = full.transpose(inv + [n + k for k in inv])
    total = int(np.prod(dims, dtype=np.int64))
    return full.reshape(total, total)


def partial_trace_first(x, d):
    """Trace out the leading tensor leg of dimension ``d``."""
    x = np.asarray(x)
    m = x.shape[0] // d
    return np.einsum("aiaj->ij", x.reshape(d, m, d, m))


def sl2_irrep(lam, hermitian=False):
    """Construct the irreducible sl2 module with highest weight ``lam``.

    The default basis has ``F v_k = v_{k+1}`` and ``E v_k = k(lam-k+1) v_{k-1}``,
    so all entries are integers and the structure relations hold exactly.
    With ``hermitian=True`` the basis is rescaled so that ``E = F.T`` (float
    entries); this is the basis in which Gaudin Hamiltonians with real
    parameters are self-adjoint.
    """
    lam = int(lam)
    if lam < 0:
        raise ValueError("highest weight must be nonnegative")
    d = lam + 1
    k = np.arange(1, d)
    coef = k * (lam - k + 1)
    H = np.diag(lam - 2 * np.arange(d))
    if hermitian:
        s = np.sqrt(coef.astype(float))
        E = np.diag(s, 1)
        F = np.diag(s, -1)
        H = H.astype(float)
    else:
        E = np.diag(coef, 1).astype(np.int64)
        F = np.diag(np.ones(d - 1, dtype=np.int64), -1)
        H = H.astype(np.int64)
    return Irrep(lam, E, F, H)


def casimir(rep):
    """Quadratic Casimir ``EF + FE + H^2/2`` (trace-form normalization)."""
    return rep.E @ rep.F + rep.F @ rep.E + 0.5 * rep.H @ rep.H


def commutator(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"commutator needs square matrices of equal size, got {a.shape} and {b.shape}")
    return a @ b - b @ a


def qr_decompose(a):
    """QR factorization of a real invertible matrix with ``diag(R) > 0``.

    Householder QR from LAPACK, followed by a sign normalization that makes
    the factorization unique.  Raises :class:`SingularMatrixError` when a
    pivot of ``R`` is not finite or below ``n * eps * ||a||``.
    """
    a = np.asarray(a)
    if np.iscomplexobj(a):
        if np.any(a.imag != 0):
            raise ValueError("qr_decompose expects a real matrix")
        a = a.real
    a = a.astype(float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("qr_decompose expects a square matrix")
    q, r = np.linalg.qr(a)
    d = np.diag(r)
    floor = a.shape[0] * np.finfo(float).eps * np.linalg.norm(a)
    if not np.all(np.isfinite(d)) or np.any(np.abs(d) <= floor):
        raise SingularMatrixError("matrix is singular to working precision")
    s = np.sign(d)
    return q * s, r * s[:, None]


def _offdiag_norm(a):
    off = a - np.diag(np.diag(a))
    return np.linalg.norm(off)


def hermitian_eigs(a, tol=1e-12, max_sweeps=100):
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ascending real eigenvalues and a unitary matrix whose columns are
    the matching eigenvectors.  Sweeps stop once the off-diagonal Frobenius
    norm drops below ``1e-14 * ||a||``.
    """
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError("hermitian_eigs expects a square matrix")
    scale = np.linalg.norm(a)
    if np.linalg.norm(a - a.conj().T) > tol * max(scale, 1.0):
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    target = 1e-14 * scale
    for _ in range(max_sweeps):
        if _offdiag_norm(a) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-300 or mag <= 1e-18 * scale:
                    continue
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = 1.0 / (abs(tau) + np.sqrt(1.0 + tau * tau))
                if tau < 0:
                    t = -t
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # J = diag(1, conj(phase)) followed by a real rotation
                j = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ j
                a[idx, :] = j.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ j
    else:
        raise np.linalg.LinAlgError("Jacobi iteration did not converge")
    w = np.diag(a).real
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def sym_exp(a, t=1.0):
    """``exp(t a)`` for real symmetric ``a`` via its eigen-decomposition."""
    a = np.asarray(a, dtype=float)
    w, v = hermitian_eigs(a)
    v = v.real if np.allclose(v.imag, 0.0) else v
    out = (v * np.exp(t * w)) @ v.conj().T
    out = np.real_if_close(out)
    return 0.5 * (out + out.T)
