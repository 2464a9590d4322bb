"""Collaborative multi-armed bandit simulations on user graphs."""

try:
    from ._core import *  # noqa: F401,F403
except ImportError:  # in-place build without the package layout
    from _core import *  # type: ignore  # noqa: F401,F403

__version__ = "0.1.0"
