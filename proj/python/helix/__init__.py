"""Helical Landau states in a uniform magnetic field.

Thin bindings over the C++ core: classical trajectories, nonrelativistic and
relativistic closed forms, the split-step propagator, field I/O and the
verification checks.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
