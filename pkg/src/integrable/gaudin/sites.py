from dataclasses import dataclass

import numpy as np

from ..linalg import sl2_irrep


class DuplicatePointError(ValueError):
    pass


class PoleCollisionError(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class GaudinSites:
    """Marked points ``z_i`` carrying sl2 highest weights ``lam_i``."""

    z: tuple
    lam: tuple

    def __init__(self, z, lam):
        z = tuple(complex(x) for x in np.atleast_1d(z))
        lam = tuple(int(x) for x in np.atleast_1d(lam))
        if len(z) != len(lam) or not z:
            raise ValueError("need one weight per marked point and at least one point")
        if any(x < 0 for x in lam):
            raise ValueError("weights must be nonnegative integers")
        for i in range(len(z)):
            for j in range(i + 1, len(z)):
                if z[i] == z[j]:
                    raise DuplicatePointError(f"marked points {i} and {j} coincide (z = {z[i]})")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "lam", lam)

    @property
    def N(self):
        return len(self.z)

    @property
    def dims(self):
        return [l + 1 for l in self.lam]

    @property
    def dim(self):
        return int(np.prod(self.dims))

    def is_real(self):
        return all(x.imag == 0 for x in self.z)

    def irreps(self, hermitian=False):
        return [sl2_irrep(l, hermitian=hermitian) for l in self.lam]

    def check_off_poles(self, *points, sep=0.0):
        for u in points:
            for i, zi in enumerate(self.z):
                if abs(u - zi) <= sep:
                    raise PoleCollisionError(f"spectral parameter {u} hits marked point z_{i} = {zi}")
