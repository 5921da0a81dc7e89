"""Lattice point counts, Selberg/Harish-Chandra transforms and CM points on
arithmetic Shimura curves X(D,1)."""

from ._core import *  # noqa: F401,F403
from ._core import (  # noqa: F401
    ConfigError,
    DomainError,
    NumericError,
    PrecisionError,
    QlabError,
    ResourceError,
)

__version__ = "0.1.0"
