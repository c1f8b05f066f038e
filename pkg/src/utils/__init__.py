"""
Shared utilities: logging setup, clocks and seed derivation.
"""

from .clock import Clock, LogicalClock, SystemClock, isoformat
from .logging import configure_logging
from .seeding import component_rng, derive_seed

__all__ = [
    "Clock",
    "LogicalClock",
    "SystemClock",
    "isoformat",
    "configure_logging",
    "component_rng",
    "derive_seed",
]
