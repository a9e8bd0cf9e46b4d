"""Classical r-matrices for gl(n)/sl(n) and their Yang-Baxter identities.

Two flavours live here.  The operator form ``r in End(g)`` built from the
triangular splitting of gl(n) is checked against the modified classical
Yang-Baxter identity and the Jacobi identity of the r-bracket.  The tensor
forms with spectral parameter (rational, trigonometric) are checked against
the classical Yang-Baxter equation on three tensor legs.

All residuals are Frobenius norms.
"""

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from .linalg import commutator, embed_two_sites

__all__ = [
    "Splitting",
    "RKind",
    "permutation",
    "tensor_casimir",
    "rational_r",
    "standard_r",
    "trig_r",
    "splitting_r_apply",
    "gl_basis",
    "r_bracket",
    "check_mcybe",
    "check_r_bracket_jacobi",
    "check_cybe_spectral",
    "cybe_residual",
]


class RKind(enum.Enum):
    RATIONAL = "rational"
    TRIGONOMETRIC = "trigonometric"
    STANDARD_SL2 = "standard"
    SPLITTING_OPERATOR = "splitting"


@dataclass(frozen=True)
class Splitting:
    """gl(n) = g+ (upper triangle incl. diagonal) + g- (strictly lower)."""

    n: int

    def in_plus(self, i, j):
        return j >= i

    def projections(self, x):
        x = np.asarray(x)
        upper = np.triu(x)
        return upper, x - upper


def permutation(n):
    """Swap operator ``P`` on C^n (x) C^n, ``P(a (x) b) = b (x) a``."""
    p = np.zeros((n * n, n * n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            p[b * n + a, a * n + b] = 1
    return p


def tensor_casimir(n, gl=False):
    """Tensor Casimir of sl(n) in the fundamental representation, ``P - I/n``.

    The trace form is used as the inner product.  ``gl=True`` returns the gl(n)
    Casimir ``P``, which differs by a multiple of the identity.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    p = permutation(n).astype(float)
    if gl:
        return p
    return p - np.eye(n * n) / n


def rational_r(u, v, n=2, gl=False):
    if u == v:
        raise ZeroDivisionError("rational r-matrix has a pole at u = v")
    return tensor_casimir(n, gl=gl) / (u - v)


def _unit(n, i, j, dtype=np.int64):
    e = np.zeros((n, n), dtype=dtype)
    e[i, j] = 1
    return e


def standard_r(n=2):
    """Skew r-matrix ``sum_{i<j} E_ij ^ E_ji`` in the fundamental representation."""
    if n < 2:
        raise ValueError("n must be at least 2")
    r = np.zeros((n * n, n * n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            eij, eji = _unit(n, i, j), _unit(n, j, i)
            r += np.kron(eij, eji) - np.kron(eji, eij)
    return r


def trig_r(x, n=2):
    """Trigonometric r-matrix ``t (x+1)/(x-1) + r`` in multiplicative parameter ``x``."""
    if x == 1:
        raise ZeroDivisionError("trigonometric r-matrix has a pole at x = 1")
    return tensor_casimir(n) * ((x + 1) / (x - 1)) + standard_r(n)


def splitting_r_apply(s, x):
    """``r = P+ - P-`` applied to ``x``."""
    plus, minus = s.projections(x)
    return plus - minus


def gl_basis(n, dtype=np.int64):
    return [_unit(n, i, j, dtype) for i in range(n) for j in range(n)]


def r_bracket(r, x, y):
    """``[x, y]_r = ([r x, y] + [x, r y]) / 2``."""
    return 0.5 * (commutator(r(x), y) + commutator(x, r(y)))


def check_mcybe(s, r=None):
    """Largest residual of the modified CYBE over all pairs of gl(n) basis elements.

    ``r`` defaults to the splitting operator of ``s``; pass another callable to
    test a perturbed operator.  For integer inputs the arithmetic is exact.
    """
    if r is None:
        r = lambda x: splitting_r_apply(s, x)
    basis = gl_basis(s.n)
    worst = 0.0
    for x, y in itertools.product(basis, repeat=2):
        rx, ry = r(x), r(y)
        res = commutator(rx, ry) - r(commutator(rx, y) + commutator(x, ry)) + commutator(x, y)
        worst = max(worst, float(np.linalg.norm(res)))
    return worst


def check_r_bracket_jacobi(s, r=None):
    """Largest Jacobiator norm of the r-bracket over all basis triples."""
    if r is None:
        r = lambda x: splitting_r_apply(s, x)
    basis = gl_basis(s.n)
    worst = 0.0
    br = lambda a, b: r_bracket(r, a, b)
    for x, y, z in itertools.product(basis, repeat=3):
        jac = br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))
        worst = max(worst, float(np.linalg.norm(jac)))
    return worst


def cybe_residual(r12, r13, r23, n):
    """``||[r12, r13] + [r12, r23] + [r13, r23]||`` for two-leg matrices placed on three legs."""
    dims = [n, n, n]
    a = embed_two_sites(r12, 0, 1, dims)
    b = embed_two_sites(r13, 0, 2, dims)
    c = embed_two_sites(r23, 1, 2, dims)
    res = commutator(a, b) + commutator(a, c) + commutator(b, c)
    return float(np.linalg.norm(res))


def check_cybe_spectral(kind, u, v, w, n=2):
    """Classical Yang-Baxter residual of a spectral-parameter r-matrix.

    Rational: legs carry ``r(u, v)``, ``r(u, w)``, ``r(v, w)``.
    Trigonometric: legs carry ``r(u/v)``, ``r(u/w)``, ``r(v/w)``.
    """
    kind = RKind(kind)
    if len({u, v, w}) < 3:
        raise ZeroDivisionError("spectral parameters must be pairwise distinct")
    if kind is RKind.RATIONAL:
        return cybe_residual(rational_r(u, v, n), rational_r(u, w, n), rational_r(v, w, n), n)
    if kind is RKind.TRIGONOMETRIC:
        if 0 in (u, v, w):
            raise ZeroDivisionError("multiplicative parameters must be nonzero")
        return cybe_residual(trig_r(u / v, n), trig_r(u / w, n), trig_r(v / w, n), n)
    raise ValueError(f"no spectral CYBE for {kind}")
