"""Anisotropic path planning on inclined terrain."""

from ._core import (
    BoundsError,
    CamisError,
    CamisModel,
    ConfigError,
    DataError,
    DivergenceError,
    FormatError,
    InvalidEllipseError,
    SlipSingularityError,
    Terrain,
    UnreachableError,
    plan,
    profile,
)

__all__ = [
    "BoundsError",
    "CamisError",
    "CamisModel",
    "ConfigError",
    "DataError",
    "DivergenceError",
    "FormatError",
    "InvalidEllipseError",
    "SlipSingularityError",
    "Terrain",
    "UnreachableError",
    "plan",
    "profile",
]
