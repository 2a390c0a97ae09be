"""Exact z-measures, Ewens measures and characters for wreath products S_n(G)."""

from .errors import (
    CapabilityError,
    ContractError,
    DomainError,
    ModelError,
    ResourceBoundError,
    ZMWError,
)
from .partitions import YoungDiagram, enumerate_partitions
from .spectral_group import CentralFunction, GroupModel, builtin_model, load_model
from .zmeasure import DiagramFamily, family_zmeasure, phi_z
from .wreath import ColoredPermutation

__version__ = "0.1.0"

__all__ = [
    "CapabilityError",
    "CentralFunction",
    "ColoredPermutation",
    "ContractError",
    "DiagramFamily",
    "DomainError",
    "GroupModel",
    "ModelError",
    "ResourceBoundError",
    "YoungDiagram",
    "ZMWError",
    "builtin_model",
    "enumerate_partitions",
    "family_zmeasure",
    "load_model",
    "phi_z",
]
