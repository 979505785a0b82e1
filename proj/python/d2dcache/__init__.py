"""Data offloading ratio of mobile D2D caching networks."""

from ._d2dcache import *  # noqa: F401,F403
from ._d2dcache import __doc__  # noqa: F401
