"""Nearest hub clustering for dynamic graphs."""

from .engine import UNASSIGNED, Engine, EngineError, EventStats, StabilizationError
from .graph import DynamicGraph, GraphError
from .hubs import HubPolicy, PowerLawFit, dmin_from_fraction, estimate_gamma, is_hub
from .oracle import batch_recompute

__version__ = "0.1.0"

__all__ = [
    "UNASSIGNED",
    "DynamicGraph",
    "Engine",
    "EngineError",
    "EventStats",
    "GraphError",
    "HubPolicy",
    "PowerLawFit",
    "StabilizationError",
    "batch_recompute",
    "dmin_from_fraction",
    "estimate_gamma",
    "is_hub",
]
