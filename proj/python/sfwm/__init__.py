"""Python bindings for the SFWM simulation core."""

from ._sfwm import *  # noqa: F401,F403
from ._sfwm import ConfigError, DataError, DomainError, Error

__all__ = [name for name in dir() if not name.startswith("_")]
