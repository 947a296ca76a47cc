"""Planar motion of three point vortices in the parabolic case (K = 0).

Thin wrapper around the C++ core; see the project README for the library
surface and the `trivortex` command line tool.
"""

from trivortex._core import *  # noqa: F401,F403
from trivortex._core import __version__  # noqa: F401
