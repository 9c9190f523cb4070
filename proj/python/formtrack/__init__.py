"""Formation-preserving collaborative target tracking."""

from formtrack._core import *  # noqa: F401,F403
from formtrack._core import __doc__  # noqa: F401

__version__ = "0.1.0"
