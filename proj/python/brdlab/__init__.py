"""Better-response dynamics lab for congestion games.

Thin Python surface over the C++ core: game construction, costs and
potentials, approximate better-response dynamics, phi-smooth perturbations,
brute-force oracles, and the closed-form iteration-bound calculators.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
