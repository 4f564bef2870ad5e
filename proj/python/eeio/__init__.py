"""Emission accounting on input-output tables."""

from ._core import *  # noqa: F401,F403
from ._core import EeioError

__all__ = [name for name in dir() if not name.startswith("_")]
