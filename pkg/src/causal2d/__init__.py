"""Exact causal and conformal structure of two-dimensional spacetimes."""

from .exactmaps import MonotoneMap, PLFunction, QuasiPeriodicMap, affine, identity
from .flatcone import CausalAutomorphism, Event, Kind, NullEvent
from .cylinder import CylinderAutomorphism, CylPoint, DescentVerdict
from .embedding import Domain

__all__ = [
    "CausalAutomorphism",
    "CylPoint",
    "CylinderAutomorphism",
    "DescentVerdict",
    "Domain",
    "Event",
    "Kind",
    "MonotoneMap",
    "NullEvent",
    "PLFunction",
    "QuasiPeriodicMap",
    "affine",
    "identity",
]
