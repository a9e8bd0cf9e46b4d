"""q-deformed lattice machinery: R-matrix, monodromy, transfer matrices, quantum determinant.

Conventions
-----------
* ``r_q(z)`` is the 4x4 trigonometric R-matrix in the basis
  ``e1e1, e1e2, e2e1, e2e2``.
* Local L-operators are ``L_n(z) = r_q(z / zeta_n)`` acting on aux (x) site n,
  with the auxiliary C^2 as the leading tensor leg.
* The monodromy is the ordered product ``T(z) = L_N(z) ... L_1(z)`` and is
  returned as its four operator entries on the ``N``-site chain.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import commutator, embed_two_sites

__all__ = [
    "Chain",
    "PoleError",
    "QDetCalibrationError",
    "QDet",
    "r_q",
    "qybe_residual",
    "rll_residual",
    "monodromy",
    "monodromy_rll_residual",
    "transfer",
    "transfer_commutativity_residual",
    "qdet",
    "qdet_quasideterminant",
    "scalar_deviation",
    "semiclassical_fit",
    "unitarity_deviation",
    "POLE_GUARD",
]

POLE_GUARD = 1e-10


class PoleError(ZeroDivisionError):
    pass


class QDetCalibrationError(RuntimeError):
    pass


@dataclass(frozen=True)
class Chain:
    """``N`` spin-1/2 sites with inhomogeneities ``zeta`` and diagonal twist ``h``."""

    N: int
    zeta: tuple = None
    twist: tuple = (1.0, 1.0)

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("chain needs at least one site")
        zeta = (1.0,) * self.N if self.zeta is None else tuple(complex(x) for x in self.zeta)
        if len(zeta) != self.N:
            raise ValueError("one inhomogeneity per site")
        if any(x == 0 for x in zeta):
            raise ValueError("inhomogeneities must be nonzero")
        tw = np.asarray(self.twist, dtype=complex)
        if tw.shape == (2, 2):
            if tw[0, 1] != 0 or tw[1, 0] != 0:
                raise ValueError("twist must be diagonal")
            tw = np.diag(tw)
        if tw.shape != (2,):
            raise ValueError("twist is a diagonal 2x2 matrix or its two diagonal entries")
        object.__setattr__(self, "zeta", tuple(complex(x) for x in zeta))
        object.__setattr__(self, "twist", tuple(complex(x) for x in tw))

    @property
    def dim(self):
        return 2**self.N


def _check_pole(z, q):
    if abs(z - q * q) <= POLE_GUARD:
        raise PoleError(f"spectral parameter {z} sits on the pole q^2 = {q * q}")


def r_q(z, q):
    """Trigonometric quantum R-matrix."""
    _check_pole(z, q)
    d = q - z / q
    b = (1 - z) / d
    return np.array(
        [
            [1, 0, 0, 0],
            [0, b, z * (q - 1 / q) / d, 0],
            [0, (q - 1 / q) / d, b, 0],
            [0, 0, 0, 1],
        ],
        dtype=complex,
    )


def qybe_residual(q, u, v):
    """``||R12(u) R13(uv) R23(v) - R23(v) R13(uv) R12(u)||``."""
    dims = [2, 2, 2]
    R12 = embed_two_sites(r_q(u, q), 0, 1, dims)
    R13 = embed_two_sites(r_q(u * v, q), 0, 2, dims)
    R23 = embed_two_sites(r_q(v, q), 1, 2, dims)
    return float(np.linalg.norm(R12 @ R13 @ R23 - R23 @ R13 @ R12))


def rll_residual(q, u, v):
    """``||R(u/v) L1(u) L2(v) - L2(v) L1(u) R(u/v)||`` on aux1 (x) aux2 (x) site."""
    dims = [2, 2, 2]
    R = r_q(u / v, q)
    if abs(np.linalg.det(R)) < 1e-14:
        raise PoleError("R(u/v) is not invertible")
    R = embed_two_sites(R, 0, 1, dims)
    L1 = embed_two_sites(r_q(u, q), 0, 2, dims)
    L2 = embed_two_sites(r_q(v, q), 1, 2, dims)
    return float(np.linalg.norm(R @ L1 @ L2 - L2 @ L1 @ R))


def _full_monodromy(chain, q, z, n_aux=1, aux=0):
    dims = [2] * n_aux + [2] * chain.N
    T = np.eye(2 ** (n_aux + chain.N), dtype=complex)
    for n, zeta in enumerate(chain.zeta):
        x = z / zeta
        if abs(x - q * q) <= POLE_GUARD:
            raise PoleError(f"z / zeta_{n} = {x} sits on the pole q^2")
        T = embed_two_sites(r_q(x, q), aux, n_aux + n, dims) @ T
    return T


def monodromy(chain, q, z):
    """Entries ``[[T11, T12], [T21, T22]]`` of ``T(z) = L_N(z) ... L_1(z)``."""
    D = chain.dim
    T = _full_monodromy(chain, q, z).reshape(2, D, 2, D)
    return [[T[a, :, b, :] for b in range(2)] for a in range(2)]


def monodromy_rll_residual(chain, q, u, v):
    """RTT exchange relation ``R(u/v) T1(u) T2(v) = T2(v) T1(u) R(u/v)``."""
    R = embed_two_sites(r_q(u / v, q), 0, 1, [2, 2, chain.dim])
    T1 = _full_monodromy(chain, q, u, n_aux=2, aux=0)
    T2 = _full_monodromy(chain, q, v, n_aux=2, aux=1)
    return float(np.linalg.norm(R @ T1 @ T2 - T2 @ T1 @ R))


def transfer(chain, q, z):
    """Twisted transfer matrix ``h11 T11(z) + h22 T22(z)``."""
    T = monodromy(chain, q, z)
    h1, h2 = chain.twist
    return h1 * T[0][0] + h2 * T[1][1]


def transfer_commutativity_residual(chain, q, z, w):
    return float(np.linalg.norm(commutator(transfer(chain, q, z), transfer(chain, q, w))))


def scalar_deviation(x):
    """``(||x - c I||, c)`` with ``c = tr(x)/dim``, the closest multiple of the identity."""
    c = np.trace(x) / x.shape[0]
    return float(np.linalg.norm(x - c * np.eye(x.shape[0]))), complex(c)


@dataclass(frozen=True)
class QDet:
    """Calibrated quantum determinant and the bookkeeping of the calibration."""

    operator: np.ndarray
    shift: complex
    shift_label: str
    coefficient: complex
    coefficient_label: str
    value: complex
    deviation: float
    candidates: tuple


def _candidates(q):
    shifts = (("q^2", q**2), ("q^-2", q**-2), ("q", q), ("q^-1", 1 / q))
    coefs = (("1", 1.0), ("q", q), ("q^-1", 1 / q))
    return shifts, coefs


def qdet(chain, q, z, tol=1e-8):
    """Quantum determinant ``T11(z s) T22(z) - k T21(z s) T12(z)``, calibrated.

    The shift ``s`` runs over ``q^2, q^-2, q, q^-1`` and the exchange
    coefficient ``k`` over ``1, q, q^-1``; the first pair (in that order)
    whose result is a multiple of the identity to relative accuracy ``tol``
    is kept.  Raises :class:`QDetCalibrationError` listing every residual when
    none qualifies.
    """
    shifts, coefs = _candidates(q)
    Tz = monodromy(chain, q, z)
    tried = []
    for slabel, s in shifts:
        try:
            Ts = monodromy(chain, q, z * s)
        except PoleError:
            for clabel, _ in coefs:
                tried.append((slabel, clabel, float("inf")))
            continue
        for clabel, k in coefs:
            op = Ts[0][0] @ Tz[1][1] - k * (Ts[1][0] @ Tz[0][1])
            dev, val = scalar_deviation(op)
            rel = dev / max(1.0, np.linalg.norm(op))
            tried.append((slabel, clabel, rel))
            if rel <= tol:
                return QDet(op, s, slabel, k, clabel, val, dev, tuple(tried))
    lines = ", ".join(f"shift={a} coef={b}: {c:.3e}" for a, b, c in tried)
    raise QDetCalibrationError(f"no candidate quantum determinant is central ({lines})")


def qdet_quasideterminant(chain, q, z):
    """Quantum determinant in quasi-determinant form ``T11(z q^2) (T22 - T21 T11^{-1} T12)(z)``.

    Needs ``T11(z)`` invertible; kept as an independent cross-check of
    :func:`qdet`.
    """
    Ts = monodromy(chain, q, z * q * q)
    T = monodromy(chain, q, z)
    schur = T[1][1] - T[1][0] @ np.linalg.solve(T[0][0], T[0][1])
    return Ts[0][0] @ schur


def semiclassical_fit(z, eps=1e-5):
    """Compare ``dR/dq`` at ``q = 1`` with the trigonometric classical r-matrix.

    Fits ``dR/dq = sign * r_trig(z) + c I`` and returns ``(sign, c, max entry residual)``.
    """
    from .rmatrix import trig_r

    dR = (r_q(z, 1 + eps) - r_q(z, 1 - eps)) / (2 * eps)
    r = trig_r(z, 2)
    I = np.eye(4)
    best = None
    for sign in (1.0, -1.0):
        # least-squares identity coefficient
        c = np.trace(dR - sign * r) / 4
        res = float(np.max(np.abs(dR - sign * r - c * I)))
        if best is None or res < best[2]:
            best = (sign, complex(c), res)
    return best


def unitarity_deviation(z, q):
    """Deviation of ``R(z) P R(1/z) P`` from a multiple of the identity."""
    from .rmatrix import permutation

    P = permutation(2)
    return scalar_deviation(r_q(z, q) @ P @ r_q(1 / z, q) @ P)[0]
