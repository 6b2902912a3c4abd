"""Bergman kernel, metric and curvature on annuli."""

from ._bergman import *  # noqa: F401,F403
from ._bergman import __doc__  # noqa: F401
