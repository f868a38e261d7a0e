"""Variational grid generation with prescribed Jacobian determinant and curl."""

from varigrid._core import *  # noqa: F401,F403
from varigrid._core import __version__  # noqa: F401
