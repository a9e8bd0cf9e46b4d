"""sl2 Gaudin model: classical bracket checks, quantum Hamiltonians, Bethe Ansatz."""

from .bethe import *  # noqa: F401,F403
from .classical import *  # noqa: F401,F403
from .quantum import *  # noqa: F401,F403
from .sites import DuplicatePointError, GaudinSites, PoleCollisionError  # noqa: F401
