"""Scripting bindings for the ``tritop`` 3-manifold kernel."""

from .api import (
    BoundApi,
    BoundSurface,
    SurfaceSet,
    projective_space_script,
    session_parity,
)

__all__ = [
    "BoundApi",
    "BoundSurface",
    "projective_space_script",
    "session_parity",
    "SurfaceSet",
]
